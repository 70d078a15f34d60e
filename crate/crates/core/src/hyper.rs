//! Rigid real hypersurfaces of the special form `Re(h) + sum |f_j|^2`,
//! translated to ideal invariants through the factor-of-two
//! correspondence: the contact order of the hypersurface is twice the
//! contact order of the associated ideal `(h, f_1, ..., f_t)`.

use std::fmt;

use num_traits::Zero;

use crate::engine::{
    betaq, catlin_q, catlin_q_slicing_bound, type1, typeq, EngineConfig, EngineError,
};
use crate::ideal::IdealPresentation;
use crate::lang::ParsedHypersurface;
use crate::poly::Polynomial;
use crate::report::{InvariantName, InvariantReport, Status};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HyperError {
    ZeroLinearPart,
    NonVanishing { index: usize },
}

impl fmt::Display for HyperError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HyperError::ZeroLinearPart => {
                write!(f, "the pure term has zero linear part (dh(0) = 0)")
            }
            HyperError::NonVanishing { index } => {
                write!(f, "squared-modulus term {} does not vanish at 0", index + 1)
            }
        }
    }
}

impl std::error::Error for HyperError {}

/// A rigid hypersurface in the accepted special form.
#[derive(Debug, Clone)]
pub struct RigidHypersurface {
    data: ParsedHypersurface,
}

impl RigidHypersurface {
    pub fn new(data: ParsedHypersurface) -> Result<Self, HyperError> {
        if !data.h.constant_term().is_zero()
            || data.h.linear_part().iter().all(|c| c.is_zero())
        {
            return Err(HyperError::ZeroLinearPart);
        }
        for (i, f) in data.fs.iter().enumerate() {
            if !f.constant_term().is_zero() {
                return Err(HyperError::NonVanishing { index: i });
            }
        }
        Ok(RigidHypersurface { data })
    }

    pub fn nvars(&self) -> usize {
        self.data.nvars
    }

    pub fn pure_term(&self) -> &Polynomial {
        &self.data.h
    }

    pub fn modulus_terms(&self) -> &[Polynomial] {
        &self.data.fs
    }

    /// The associated ideal `(h, f_1, ..., f_t)`.
    pub fn associated_ideal(&self) -> IdealPresentation {
        let mut gens = vec![self.data.h.clone()];
        gens.extend(self.data.fs.iter().cloned());
        IdealPresentation::new(self.data.nvars, gens)
            .expect("validated hypersurface data forms an ideal")
    }
}

/// Maximum order of contact of curves with the hypersurface: twice the
/// contact order of the associated ideal.
pub fn delta1(
    m: &RigidHypersurface,
    config: &EngineConfig,
) -> Result<InvariantReport, EngineError> {
    Ok(type1(&m.associated_ideal(), config)?
        .doubled()
        .relabel(InvariantName::Delta1)
        .with_note("hypersurface contact order: twice the ideal contact order"))
}

/// q-dimensional contact order: slicing the hypersurface corresponds to
/// adjoining linear forms to the associated ideal.
pub fn deltaq(
    m: &RigidHypersurface,
    q: usize,
    config: &EngineConfig,
) -> Result<InvariantReport, EngineError> {
    Ok(typeq(&m.associated_ideal(), q, config, &[])?
        .doubled()
        .relabel(InvariantName::DeltaQ)
        .with_note("hypersurface q-type: twice the ideal q-type"))
}

/// Generic-value counterpart of the sliced contact order (twice the
/// generic value of the ideal).
pub fn generic_deltaq(
    m: &RigidHypersurface,
    q: usize,
    config: &EngineConfig,
) -> Result<InvariantReport, EngineError> {
    Ok(betaq(&m.associated_ideal(), q, config)?
        .doubled()
        .relabel(InvariantName::DeltaQ)
        .with_note("generic value of the sliced hypersurface contact order"))
}

/// Catlin-style q-type of the hypersurface: twice the ideal value via the
/// generic-value identity, with the slicing lower bound computed inside
/// the hyperplane `h = 0` attached when the reduction lands in the
/// implemented regime.
pub fn catlinq_hyper(
    m: &RigidHypersurface,
    q: usize,
    config: &EngineConfig,
) -> Result<InvariantReport, EngineError> {
    let ideal = m.associated_ideal();
    let mut report = catlin_q(&ideal, q, config)?
        .doubled()
        .relabel(InvariantName::DqHyper)
        .with_note(
            "reported as twice the ideal value via the generic-value identity; \
             the hypersurface analog is taken from the cited identity theorem",
        );
    // Slicing lower bound inside {h = 0}: eliminate the pure term, then
    // slice the remaining ideal. Only the (q, n-1) = (2, 3) regime is
    // implemented.
    if q == 2 && m.nvars() == 4 && !m.modulus_terms().is_empty() {
        match restrict_to_pure_hyperplane(m) {
            Some(restricted) => {
                let varieties: Vec<Polynomial> = restricted.generators().to_vec();
                match catlin_q_slicing_bound(&restricted, 2, &varieties, config) {
                    Ok(slice) => {
                        let doubled = slice.doubled();
                        report.notes.push(format!(
                            "slicing lower bound inside the pure-term hyperplane: {}",
                            doubled.value.render()
                        ));
                        report.witnesses.extend(doubled.witnesses);
                        if report.status == Status::Exact {
                            if let (Some(bound), Some(value)) =
                                (doubled.value.lower(), report.value.lower())
                            {
                                if bound > value {
                                    return Err(EngineError::InternalInconsistency(format!(
                                        "hypersurface slicing bound {bound} exceeds the value {value}"
                                    )));
                                }
                            }
                        }
                    }
                    Err(EngineError::NoCandidateVarieties) => {
                        report
                            .notes
                            .push("no candidate varieties inside the hyperplane".into());
                    }
                    Err(e) => return Err(e),
                }
            }
            None => {
                report.notes.push(
                    "pure term is not exactly eliminable; slicing bound skipped".into(),
                );
            }
        }
    }
    Ok(report)
}

/// Reduce the associated ideal modulo the pure term, dropping one
/// variable; the squared-modulus terms restricted to `h = 0`.
fn restrict_to_pure_hyperplane(m: &RigidHypersurface) -> Option<IdealPresentation> {
    use crate::engine::eliminate_linear;
    let pure_only = IdealPresentation::new(
        m.nvars(),
        vec![m.pure_term().clone()],
    )
    .ok()?;
    // Find the elimination the engine would perform for h alone, then
    // apply the same pseudo-reduction to every modulus term.
    let red = eliminate_linear(&pure_only).ok()?;
    if red.stages.len() != 1 {
        return None;
    }
    let stage = &red.stages[0];
    let var = stage.var;
    let h = &stage.generator;
    let a_full = h.coefficient_of_power(var, 1);
    let mut gens = Vec::new();
    for f in m.modulus_terms() {
        let mut f = f.clone();
        while let Some(d) = f.degree_in(var).filter(|&d| d >= 1) {
            let top = f.coefficient_of_power(var, d);
            let var_pow = Polynomial::var(m.nvars(), var).pow(d - 1);
            f = &(&f * &a_full) - &(&(&top * h) * &var_pow);
        }
        if !f.is_zero() {
            gens.push(f.drop_var(var));
        }
    }
    IdealPresentation::new(m.nvars() - 1, gens).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{parse_hypersurface, SourceDocument};
    use crate::poly::rat;
    use crate::report::ReportValue;

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    fn hyper(text: &str) -> RigidHypersurface {
        let doc = SourceDocument::hypersurface(text);
        RigidHypersurface::new(parse_hypersurface(&doc).unwrap()).unwrap()
    }

    fn worked_example() -> RigidHypersurface {
        hyper("ring z1..z4; hyper = Re(z4) + abs2(z1^3 - z3*z2) + abs2(z2^2);")
    }

    #[test]
    fn associated_ideal_examples() {
        let m = worked_example();
        let i = m.associated_ideal();
        assert_eq!(i.nvars(), 4);
        assert_eq!(i.generators().len(), 3);
        assert_eq!(i.generators()[0].to_string(), "z4");
        assert_eq!(i.generators()[1].to_string(), "z1^3 - z2*z3");
        assert_eq!(i.generators()[2].to_string(), "z2^2");

        let plain = hyper("ring z1..z2; hyper = Re(z2);");
        assert_eq!(plain.associated_ideal().generators().len(), 1);

        let levi = hyper("ring z1..z2; hyper = Re(z2) + abs2(z1);");
        assert_eq!(levi.associated_ideal().generators().len(), 2);
    }

    #[test]
    fn delta1_doubles_the_ideal_value() {
        for k in 1..=4u32 {
            let m = hyper(&format!("ring z1..z2; hyper = Re(z2) + abs2(z1^{k});"));
            let r = delta1(&m, &cfg()).unwrap();
            assert_eq!(r.value, ReportValue::exact_int(2 * k as i64));
            assert_eq!(r.status, Status::Exact);
        }
    }

    #[test]
    fn delta1_infinite_for_positive_dimensional_ideal() {
        let m = hyper("ring z1..z3; hyper = Re(z3) + abs2(z1*z2);");
        let r = delta1(&m, &cfg()).unwrap();
        assert_eq!(r.value, ReportValue::Infinite);
    }

    #[test]
    fn worked_example_values() {
        let m = worked_example();
        let d2 = deltaq(&m, 2, &cfg()).unwrap();
        assert_eq!(d2.value, ReportValue::exact_int(6));
        assert_eq!(d2.status, Status::Exact);

        let generic = generic_deltaq(&m, 2, &cfg()).unwrap();
        assert_eq!(generic.value, ReportValue::exact_int(8));

        let dq = catlinq_hyper(&m, 2, &cfg()).unwrap();
        assert_eq!(dq.value, ReportValue::exact_int(8));
        assert!(dq
            .notes
            .iter()
            .any(|n| n.contains("slicing lower bound inside the pure-term hyperplane: 8")));
    }

    #[test]
    fn q1_collapses() {
        let m = worked_example();
        let d1 = delta1(&m, &cfg()).unwrap();
        let dq1 = deltaq(&m, 1, &cfg()).unwrap();
        assert_eq!(d1.value, dq1.value);
        let c1 = catlinq_hyper(&m, 1, &cfg()).unwrap();
        assert_eq!(c1.value, d1.value);

        let small = hyper("ring z1..z2; hyper = Re(z2) + abs2(z1^2);");
        let r = catlinq_hyper(&small, 1, &cfg()).unwrap();
        assert_eq!(r.value, ReportValue::exact_int(4));
    }

    #[test]
    fn delta_values_are_even_when_finite() {
        use num_traits::One;
        for text in [
            "ring z1..z2; hyper = Re(z2) + abs2(z1^3);",
            "ring z1..z4; hyper = Re(z4) + abs2(z1^3 - z3*z2) + abs2(z2^2);",
            "ring z1..z3; hyper = Re(z3) + abs2(z1^2 - z2^3);",
        ] {
            let m = hyper(text);
            let r = delta1(&m, &cfg()).unwrap();
            if let ReportValue::Exact(v) = &r.value {
                let half = v / crate::poly::rat(2);
                assert!(half.denom().is_one(), "delta1 must be even, got {v}");
            }
        }
        let _ = rat(0);
    }

    #[test]
    fn deltaq_is_non_increasing_in_q() {
        let m = worked_example();
        let mut previous: Option<ReportValue> = None;
        for q in 1..=3 {
            let r = deltaq(&m, q, &cfg()).unwrap();
            if let (Some(prev), Some(cur)) = (
                previous.as_ref().and_then(|p| p.upper()),
                r.value.upper(),
            ) {
                assert!(cur <= prev, "deltaq increased from {prev} to {cur} at q = {q}");
            }
            previous = Some(r.value.clone());
        }
    }

    #[test]
    fn invalid_hypersurfaces_are_rejected() {
        use crate::lang::ParsedHypersurface;
        let bad = ParsedHypersurface {
            nvars: 2,
            h: Polynomial::var(2, 0).pow(2),
            fs: vec![],
        };
        assert_eq!(
            RigidHypersurface::new(bad).unwrap_err(),
            HyperError::ZeroLinearPart
        );
    }
}
