use super::CocycleError;
use crate::kgraph::{KGraph, Path};
use crate::phase::PhaseVector;
use crate::scalar::{Exact, Scalar};

/// A 1-cocycle `φ : Λ → T^l`, given on edges and extended additively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneCocyclePhi<I: Scalar = Exact> {
    pub l: usize,
    /// Indexed by edge id.
    pub values: Vec<PhaseVector<I>>,
}

impl<I: Scalar> OneCocyclePhi<I> {
    pub fn new(l: usize, values: Vec<PhaseVector<I>>) -> Self {
        assert!(
            values.iter().all(|v| v.len() == l),
            "every phi value must have length l"
        );
        OneCocyclePhi { l, values }
    }

    pub fn zero(g: &KGraph, l: usize) -> Self {
        OneCocyclePhi {
            l,
            values: vec![PhaseVector::zero(l); g.num_edges()],
        }
    }

    /// `φ(λ)`, the sum over the edges of `λ` (zero on vertices).
    pub fn eval(&self, path: &Path) -> PhaseVector<I> {
        path.edges()
            .iter()
            .fold(PhaseVector::zero(self.l), |acc, &e| {
                acc + self.values[e].clone()
            })
    }
}

/// Square compatibility: `φ(f) + φ(g) = φ(g') + φ(f')` for every square
/// `fg = g'f'`. Returns the offending squares as `"f g -> g' f'"`.
pub fn validate_phi<I: Scalar>(phi: &OneCocyclePhi<I>, g: &KGraph) -> Vec<String> {
    let mut bad = Vec::new();
    if phi.values.len() != g.num_edges() {
        bad.push(format!(
            "phi has {} edge values, graph has {} edges",
            phi.values.len(),
            g.num_edges()
        ));
        return bad;
    }
    for s in g.square_specs() {
        let id = |n: &str| g.edge_id(n).expect("square names resolved at construction");
        let lhs = phi.values[id(&s.from[0])].clone() + phi.values[id(&s.from[1])].clone();
        let rhs = phi.values[id(&s.to[0])].clone() + phi.values[id(&s.to[1])].clone();
        if !lhs.same_point(&rhs) {
            bad.push(format!(
                "{} {} -> {} {}",
                s.from[0], s.from[1], s.to[0], s.to[1]
            ));
        }
    }
    bad
}

/// `φ̃(μx, d(μ) − d(ν), νx) = φ(μ) − φ(ν)`.
pub fn phi_tilde<I: Scalar>(
    phi: &OneCocyclePhi<I>,
    g: &KGraph,
    mu: &Path,
    nu: &Path,
) -> Result<PhaseVector<I>, CocycleError> {
    if mu.source() != nu.source() {
        return Err(CocycleError::SourceMismatch {
            mu: g.show(mu).to_string(),
            nu: g.show(nu).to_string(),
        });
    }
    Ok(phi.eval(mu) - phi.eval(nu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kgraph::{builtin, EdgeSpec, SquareSpec};
    use crate::Phase;

    fn pv(x: Phase) -> PhaseVector {
        PhaseVector(vec![x])
    }

    #[test]
    fn validate_examples() {
        let theta = Phase::symbol("theta");
        let rho = Phase::symbol("rho");
        let b2 = builtin("B2").unwrap();
        let phi = OneCocyclePhi::new(1, vec![pv(Phase::zero()), pv(theta.clone())]);
        assert!(validate_phi(&phi, &b2).is_empty());

        let g = builtin("B2xT1").unwrap();
        let phi3 = OneCocyclePhi::new(1, vec![pv(Phase::zero()), pv(theta.clone()), pv(rho)]);
        assert!(validate_phi(&phi3, &g).is_empty());

        // two edges per color with crossed squares a c -> d b, b c -> c a, ...
        let e = |id: &str, color| EdgeSpec {
            id: id.into(),
            color,
            range: "v".into(),
            source: "v".into(),
        };
        let sq = |f: &str, g: &str, gp: &str, fp: &str| SquareSpec {
            ij: [1, 2],
            from: [f.into(), g.into()],
            to: [gp.into(), fp.into()],
        };
        let h = KGraph::from_parts(
            2,
            vec!["v".into()],
            vec![e("a", 1), e("b", 1), e("c", 2), e("d", 2)],
            vec![
                sq("a", "c", "d", "b"),
                sq("a", "d", "c", "b"),
                sq("b", "c", "c", "a"),
                sq("b", "d", "d", "a"),
            ],
        )
        .unwrap();
        assert!(crate::kgraph::validate_kgraph(&h).is_valid());
        let ok = OneCocyclePhi::new(
            1,
            vec![
                pv(theta.clone()),
                pv(theta.clone()),
                pv(Phase::zero()),
                pv(Phase::zero()),
            ],
        );
        assert!(validate_phi(&ok, &h).is_empty());
        let mut bad = ok.clone();
        bad.values[0] = pv(Phase::zero());
        assert!(!validate_phi(&bad, &h).is_empty());
    }

    #[test]
    fn tilde_examples() {
        let theta = Phase::symbol("theta");
        let b2 = builtin("B2").unwrap();
        let phi = OneCocyclePhi::new(1, vec![pv(Phase::zero()), pv(theta.clone())]);
        let p = |s: &str| b2.path_from_names(s).unwrap();
        assert_eq!(phi_tilde(&phi, &b2, &p("f"), &p("e")).unwrap(), pv(theta));
        assert!(phi_tilde(&phi, &b2, &p("e f"), &p("e f"))
            .unwrap()
            .is_trivial());
        assert!(phi_tilde(&phi, &b2, &p("e f"), &p("f e"))
            .unwrap()
            .is_trivial());
    }
}
