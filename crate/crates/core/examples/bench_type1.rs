use germ_contact_core::engine::{type1, EngineConfig};
use germ_contact_core::ideal::IdealPresentation;
use germ_contact_core::poly::{rat, LinearForm, Polynomial};

fn main() {
    let poly = |terms: &[(&[u32], i64)]| {
        Polynomial::from_terms(3, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c))))
    };
    let i = IdealPresentation::new(
        3,
        vec![
            poly(&[(&[3, 0, 0], 1), (&[0, 1, 1], -1)]),
            poly(&[(&[0, 2, 0], 1)]),
        ],
    )
    .unwrap();
    let cfg = EngineConfig::default();
    let t0 = std::time::Instant::now();
    let base = type1(&i, &cfg).unwrap();
    println!("base type1: {:?} -> {}", t0.elapsed(), base.value.render());
    for (a, b, c) in [(17i64, -23, 31), (50, 49, -48), (-7, 1, 12), (30, 0, 0)] {
        let form = LinearForm::from_ints(&[a, b, c]);
        let bigger = i.adjoin(&[form]).unwrap();
        let t0 = std::time::Instant::now();
        let r = type1(&bigger, &cfg).unwrap();
        println!("adjoin ({a},{b},{c}): {:?} -> {}", t0.elapsed(), r.value.render());
    }
}
