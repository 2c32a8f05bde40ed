//! Invariant generators for specific geometries and table ingestion.

pub mod conifold;
pub mod data;
pub mod hurwitz;
pub mod ingest;
pub mod local_curve;
pub mod toda;

use std::fmt;
use std::str::FromStr;

use rug::float::Constant;
use rug::{Float, Integer, Rational};

use crate::arith::{bernoulli, factorial, BigScalar, Precision};
use crate::invariants::GenusBound;
use crate::{Error, Result};

pub use conifold::{
    conifold_free_energy, conifold_gv_table, conifold_gw, conifold_gw_table, conifold_tower_prediction,
    InstantonSum,
};
pub use data::{parse_expression, LargeDegreeTable, SymbolicValue, XpCoefficients};
pub use hurwitz::{
    branch_points, hurwitz_a, hurwitz_alpha, hurwitz_closed, hurwitz_closed_d3_corrected, hurwitz_exact,
    hurwitz_gw, hurwitz_gw_table, hurwitz_large_genus_prediction, hurwitz_large_genus_terms, hurwitz_number,
};
pub use ingest::{format_table, load_table, parse_table, write_atomic, write_table, Table};
pub use local_curve::{
    xp_alpha, xp_critical, xp_f, xp_genus01, xp_gw, xp_gw_gv_convention, xp_gw_table, xp_one_loop_scale, XpSign,
};
pub use toda::{toda_residual, toda_residual_with};

/// How a geometry's invariants are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeometryKind {
    ClosedForm,
    CoefficientBased,
    TableBased,
}

/// Geometries known by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeometryId {
    Conifold,
    LocalCurve(u32),
    Hurwitz,
    LocalP2,
    Abjm,
    Quintic,
}

impl fmt::Display for GeometryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryId::Conifold => f.write_str("conifold"),
            GeometryId::LocalCurve(p) => write!(f, "xp:{p}"),
            GeometryId::Hurwitz => f.write_str("hurwitz"),
            GeometryId::LocalP2 => f.write_str("local-p2"),
            GeometryId::Abjm => f.write_str("abjm"),
            GeometryId::Quintic => f.write_str("quintic"),
        }
    }
}

impl FromStr for GeometryId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "conifold" => GeometryId::Conifold,
            "hurwitz" => GeometryId::Hurwitz,
            "local-p2" => GeometryId::LocalP2,
            "abjm" => GeometryId::Abjm,
            "quintic" => GeometryId::Quintic,
            other => match other.strip_prefix("xp:").map(str::parse::<u32>) {
                Some(Ok(p)) if p >= 3 => GeometryId::LocalCurve(p),
                _ => return Err(Error::InvalidArgument(format!("unknown geometry '{other}'"))),
            },
        })
    }
}

/// Per-geometry constants: critical point, genus bound and the leading GV
/// invariant.
#[derive(Clone, Debug)]
pub struct GeometrySpec {
    pub id: GeometryId,
    pub kind: GeometryKind,
    /// `(p, f = (p-1)^2)` for local curves.
    pub local_curve: Option<(u32, u64)>,
    /// Critical value of the B-model coordinate, when rational.
    pub w_c: Option<Rational>,
    /// Radius of convergence in `t` (complex for local P2); `None` when the
    /// GW series converges for all `Re t > 0`.
    pub t_c: Option<BigScalar>,
    pub bound: GenusBound,
    /// `n_0^{(1)}`, when fixed by the geometry.
    pub n01: Option<Integer>,
    /// Sign convention of generated GW tables.
    pub convention: &'static str,
}

impl GeometrySpec {
    pub fn new(id: GeometryId, prec: Precision) -> Result<Self> {
        let mut spec = GeometrySpec {
            id,
            kind: GeometryKind::TableBased,
            local_curve: None,
            w_c: None,
            t_c: None,
            bound: GenusBound::Inferred,
            n01: None,
            convention: "standard",
        };
        match id {
            GeometryId::Conifold => {
                spec.kind = GeometryKind::ClosedForm;
                spec.bound = GenusBound::Conifold;
                spec.n01 = Some(Integer::from(1));
            }
            GeometryId::LocalCurve(p) => {
                let (w_c, t_c) = xp_critical(p, prec)?;
                spec.kind = GeometryKind::CoefficientBased;
                spec.local_curve = Some((p, xp_f(p)?));
                spec.w_c = Some(w_c);
                spec.t_c = Some(t_c);
                spec.bound = GenusBound::LocalCurve(p);
                spec.n01 = Some(Integer::from(if p % 2 == 1 { 1 } else { -1 }));
                spec.convention = "gv: (-1)^{pd} on genus 0/1, (-1)^{pd+g-1} on the Jacobi formula";
            }
            GeometryId::Hurwitz => {
                spec.kind = GeometryKind::CoefficientBased;
                spec.t_c = Some(BigScalar::one(prec));
                spec.n01 = Some(Integer::from(1));
            }
            GeometryId::LocalP2 => {
                // Re t_c = 9 Cl_2(pi/3)/pi, Im t_c = -pi
                let re = (&clausen_pi_over_3(prec) / &BigScalar::pi(prec)).mul_i64(9);
                spec.t_c = Some(&re - &(&BigScalar::i(prec) * &BigScalar::pi(prec)));
                spec.bound = GenusBound::LocalP2;
                spec.n01 = Some(Integer::from(3));
            }
            GeometryId::Abjm => {
                let catalan = BigScalar::from_float(Float::with_val(prec.bits(), Constant::Catalan));
                spec.t_c = Some((&catalan / &BigScalar::pi(prec)).mul_i64(8));
                spec.bound = GenusBound::Abjm;
                spec.n01 = Some(Integer::from(-4));
            }
            GeometryId::Quintic => {
                spec.n01 = Some(Integer::from(2875));
            }
        }
        Ok(spec)
    }
}

/// `Cl_2(theta) = theta - theta ln theta + sum_k |B_{2k}| theta^{2k+1} / (2k (2k+1)!)`
/// at `theta = pi/3`.
fn clausen_pi_over_3(prec: Precision) -> BigScalar {
    let theta = BigScalar::pi(prec).div_i64(3);
    let theta_sq = &theta * &theta;
    let mut sum = &theta - &(&theta * &theta.ln());
    let mut power = theta.clone();
    let eps = BigScalar::from_i64(10, prec).powi(-i64::from(prec.decimal_digits()) - 5);
    for k in 1u32.. {
        power = &power * &theta_sq;
        let coeff = Rational::from(bernoulli(2 * k).abs_ref()) / Rational::from(factorial(2 * k + 1) * (2 * k));
        let term = power.mul_rational(&coeff);
        sum = &sum + &term;
        if term.cmp_abs(&eps).is_lt() {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn critical_values() {
        let prec = Precision::digits(40);
        let p2 = GeometrySpec::new(GeometryId::LocalP2, prec).unwrap();
        let t = p2.t_c.unwrap();
        assert!(t.real_part().agreement_digits(&BigScalar::parse("2.9075935249750546268427285965142575466", prec).unwrap()) >= 35);
        let abjm = GeometrySpec::new(GeometryId::Abjm, prec).unwrap();
        assert!(abjm.t_c.unwrap().agreement_digits(&BigScalar::parse("2.3324872322465502411070756517471593509", prec).unwrap()) >= 35);
        assert_eq!("xp:4".parse::<GeometryId>().unwrap(), GeometryId::LocalCurve(4));
        assert!("xp:2".parse::<GeometryId>().is_err());
    }
}
