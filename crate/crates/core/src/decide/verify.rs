use super::{
    verify_generators, verify_potential, PerCertificate, SimplicityCertificate, SimplicityReport,
    SimplicityVerdict,
};
use crate::cocycle::CocycleSpec;
use crate::kgraph::{product_base, KGraph};
use crate::lattice::{annihilator_lattice, verify_density_proof, LatticeBasis};
use crate::phase::PhaseExponent;
use crate::scalar::Scalar;
use crate::structure::{cycle_without_entrance, periodic_at, verify_cofinality, Status};

/// Every basis vector is a period at every vertex; this makes the lattice
/// a sublattice of `Per(Λ)` without trusting the search.
fn periods_hold<I: Scalar>(g: &KGraph, per: &LatticeBasis<I>) -> bool {
    per.basis_i64().is_some_and(|rows| {
        rows.iter()
            .all(|p| (0..g.num_vertices()).all(|v| periodic_at(g, p, v)))
    })
}

fn per_certificate_holds<I: Scalar>(
    g: &KGraph,
    c: &CocycleSpec<I>,
    rep: &SimplicityReport<I>,
) -> bool {
    let (Some(per), Some(cert)) = (&rep.per_basis, &rep.per_certificate) else {
        return false;
    };
    let k = g.k();
    match cert {
        PerCertificate::Aperiodic => {
            k == 1 && per.is_trivial() && cycle_without_entrance(g).is_none()
        }
        PerCertificate::ProductWithAperiodicBase { base_k, l } => {
            let CocycleSpec::PhiOmega(po) = c else {
                return false;
            };
            *base_k == 1
                && *l == po.l
                && product_base(g, *l).is_some_and(|b| {
                    b == po.base && b.k() == 1 && cycle_without_entrance(&b).is_none()
                })
                && per.rank() == *l
                && per.basis_i64().is_some_and(|rows| {
                    rows.iter().enumerate().all(|(j, r)| {
                        r.iter()
                            .enumerate()
                            .all(|(i, &x)| x == i64::from(i == k - l + j))
                    })
                })
        }
        PerCertificate::Exhaustive { .. } | PerCertificate::FullRank { .. } => {
            per.rank() == k && periods_hold(g, per)
        }
        PerCertificate::Unproved { .. } => false,
    }
}

/// `z` pairs trivially with every row of `A`.
fn central<I: Scalar>(a: &[Vec<PhaseExponent<I>>], z: &[I]) -> bool {
    let r = a.len();
    z.len() == r
        && (0..r).all(|j| {
            (0..r)
                .fold(PhaseExponent::zero(), |acc, i| {
                    acc + a[i][j].scale_int(&z[i])
                })
                .is_trivial()
        })
}

fn omega_matches<I: Scalar>(rep: &SimplicityReport<I>, a: &[Vec<PhaseExponent<I>>]) -> bool {
    rep.omega.as_ref().is_some_and(|o| {
        let b = o.antisymmetrization();
        b.len() == a.len()
            && b.iter()
                .flatten()
                .zip(a.iter().flatten())
                .all(|(x, y)| x.same_phase(y))
    })
}

/// Rechecks a report's certificate against the inputs. UNKNOWN reports
/// carry no claim and always pass.
pub fn verify_report<I: Scalar>(g: &KGraph, c: &CocycleSpec<I>, rep: &SimplicityReport<I>) -> bool {
    use SimplicityCertificate as C;
    use SimplicityVerdict as V;
    match (&rep.verdict, &rep.certificate) {
        (V::Unknown, _) => true,
        (V::CertifiedNonsimple, C::NotCofinal(v)) => {
            v.status == Status::NoCertified && verify_cofinality(g, v)
        }
        (V::CertifiedSimple, C::ZOmegaTrivial { antisymmetrization }) => {
            per_certificate_holds(g, c, rep)
                && omega_matches(rep, antisymmetrization)
                && annihilator_lattice(antisymmetrization, antisymmetrization.len())
                    .is_ok_and(|z| z.is_trivial())
        }
        (
            V::CertifiedNonsimple,
            C::FiniteOrbit {
                antisymmetrization,
                z_omega,
            },
        ) => {
            g.has_unique_paths()
                && per_certificate_holds(g, c, rep)
                && rep.per_certificate.as_ref().is_some_and(|p| p.exact())
                && omega_matches(rep, antisymmetrization)
                && !z_omega.is_trivial()
                && z_omega
                    .basis()
                    .iter()
                    .all(|z| central(antisymmetrization, z))
        }
        (V::CertifiedSimple, C::KroneckerDense { generators, proof }) => {
            let (CocycleSpec::PhiOmega(po), Some(z)) = (c, &rep.z_omega) else {
                return false;
            };
            per_certificate_holds(g, c, rep)
                && po.base.is_strongly_connected()
                && verify_generators(&po.base, &po.phi, z, generators)
                && verify_density_proof(&generators.gens, z.rank(), proof)
        }
        (V::CertifiedNonsimple, C::Potential(cert)) => {
            let (CocycleSpec::PhiOmega(po), Some(z)) = (c, &rep.z_omega) else {
                return false;
            };
            per_certificate_holds(g, c, rep)
                && po.base.is_strongly_connected()
                && rep
                    .omega
                    .as_ref()
                    .is_some_and(|o| o.centre().is_ok_and(|zz| &zz == z))
                && verify_potential(&po.base, &po.phi, z, cert)
        }
        _ => false,
    }
}
