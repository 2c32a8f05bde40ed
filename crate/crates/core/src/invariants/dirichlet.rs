use rug::{Integer, Rational};

use super::{arcsin_alpha, gv_to_abc, GvTable, GwTable, SineTable};
use crate::arith::{f_cs, factorial, int_pow, DirichletVector};
use crate::{Error, Result};

/// Outcome of [`dirichlet_relations_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletReport {
    pub gmax: u32,
    pub length: usize,
    pub relations_checked: usize,
    pub failure: Option<DirichletFailure>,
}

impl DirichletReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// First componentwise mismatch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletFailure {
    pub relation: &'static str,
    pub g: u32,
    pub d: u32,
}

/// Verify, for `g <= gmax` and coefficients `d <= len`:
///
/// * `GW_g / zeta(s-(2g-3)) = sum_h c_{h,g} GV_h`,
/// * `GV_g = sum_h alpha_{g,h} W_h` (with `W_h` the quotient above),
/// * `W_g = f_g A + Bhat_{2g-2}` where `A` collects `a_d` and `Bhat` the `b`, `c` terms,
/// * `GV_g = sum_{h>=1} alpha_{g,h} Bhat_{2h-2}` for `g >= 1`.
pub fn dirichlet_relations_check(gv: &GvTable, gw: &GwTable, gmax: u32, len: usize) -> Result<DirichletReport> {
    let sine = SineTable::new(gmax);
    let abc = gv_to_abc(gv, len as u32)?;
    let mut gv_vecs = Vec::new();
    let mut w_vecs = Vec::new();
    for g in 0..=gmax {
        gv_vecs.push(DirichletVector::from_fn(len, |d| Rational::from(gv.get(g, d).unwrap_or_default())));
        let mut coeffs = Vec::with_capacity(len);
        for d in 1..=len as u32 {
            coeffs.push(gw.require(g, d)?.clone());
        }
        let gw_vec = DirichletVector::new(coeffs);
        w_vecs.push(gw_vec.div(&DirichletVector::zeta_shift(len, 2 * i64::from(g) - 3))?);
    }
    // Surface lookup errors that unwrap_or_default would hide.
    for g in 0..=gmax {
        for d in 1..=len as u32 {
            gv.get(g, d)?;
        }
    }

    let a_vec = DirichletVector::from_fn(len, |d| Rational::from(abc.a(d).cloned().unwrap_or_default()));
    let bhat: Vec<DirichletVector> = (0..=gmax)
        .map(|g| -> Result<DirichletVector> {
            if g == 0 {
                return Ok(DirichletVector::zero(len));
            }
            let frak_b = DirichletVector::from_fn(len, |d| {
                let mut acc = Rational::new();
                if g == 1 {
                    acc += abc.c(d).cloned().unwrap_or_default();
                }
                for (m, b) in abc.b_row(d) {
                    acc += b * int_pow(u64::from(m), 2 * i64::from(g) - 2) ;
                }
                acc / d
            });
            let mut scale = Rational::from((Integer::from(1), factorial(2 * g - 2)));
            if g % 2 == 0 {
                scale = -scale;
            }
            Ok(frak_b
                .div(&DirichletVector::zeta_shift(len, 2 * i64::from(g) - 3))?
                .scale(&scale))
        })
        .collect::<Result<_>>()?;

    let mut checked = 0;
    let mut report = |relation: &'static str, g: u32, lhs: &DirichletVector, rhs: &DirichletVector| {
        checked += 1;
        lhs.first_mismatch(rhs).map(|d| DirichletFailure { relation, g, d })
    };

    for g in 0..=gmax {
        let mut sum_c = DirichletVector::zero(len);
        let mut sum_alpha = DirichletVector::zero(len);
        for h in 0..=g {
            sum_c = &sum_c + &gv_vecs[h as usize].scale(sine.get(h, g));
            sum_alpha = &sum_alpha + &w_vecs[h as usize].scale(&arcsin_alpha(g, h));
        }
        let split = &a_vec.scale(&f_cs(g)) + &bhat[g as usize];
        let checks = [
            ("W_g = sum_h c_{h,g} GV_h", &w_vecs[g as usize], &sum_c),
            ("GV_g = sum_h alpha_{g,h} W_h", &gv_vecs[g as usize], &sum_alpha),
            ("W_g = f_g A + Bhat_{2g-2}", &w_vecs[g as usize], &split),
        ];
        for (name, lhs, rhs) in checks {
            if let Some(f) = report(name, g, lhs, rhs) {
                return Ok(finish(gmax, len, checked, Some(f)));
            }
        }
        if g >= 1 {
            let mut sum_b = DirichletVector::zero(len);
            for h in 1..=g {
                sum_b = &sum_b + &bhat[h as usize].scale(&arcsin_alpha(g, h));
            }
            if let Some(f) = report("GV_g = sum_h alpha_{g,h} Bhat_{2h-2}", g, &gv_vecs[g as usize], &sum_b) {
                return Ok(finish(gmax, len, checked, Some(f)));
            }
        } else if let Some(f) = report("GV_0 = A", 0, &gv_vecs[0], &a_vec) {
            return Ok(finish(gmax, len, checked, Some(f)));
        }
    }
    Ok(finish(gmax, len, checked, None))
}

fn finish(gmax: u32, length: usize, relations_checked: usize, failure: Option<DirichletFailure>) -> DirichletReport {
    DirichletReport {
        gmax,
        length,
        relations_checked,
        failure,
    }
}

impl std::fmt::Display for DirichletFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} fails at g={}, d={}", self.relation, self.g, self.d)
    }
}

impl From<DirichletFailure> for Error {
    fn from(f: DirichletFailure) -> Self {
        Error::Inconsistent(f.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{gv_to_gw, GenusBound};

    #[test]
    fn conifold_quotient_is_a_delta() {
        let mut gv = GvTable::new("conifold", GenusBound::Conifold).with_exhaustive(true);
        gv.insert(0, 1, Integer::from(1)).unwrap();
        let gw = gv_to_gw(&gv, 4, 12).unwrap();
        let report = dirichlet_relations_check(&gv, &gw, 4, 12).unwrap();
        assert!(report.passed(), "{:?}", report.failure);
        let w = DirichletVector::new((1..=12).map(|d| gw.get(3, d).unwrap().clone()).collect())
            .div(&DirichletVector::zeta_shift(12, 3))
            .unwrap();
        assert_eq!(w.get(1), &f_cs(3));
        assert!((2..=12).all(|d| *w.get(d) == 0));
    }

    #[test]
    fn zero_table_gives_zero_vectors() {
        let gv = GvTable::new("empty", GenusBound::Conifold).with_exhaustive(true);
        let gw = gv_to_gw(&gv, 3, 8).unwrap();
        assert!(gw.is_identically_zero());
        assert!(dirichlet_relations_check(&gv, &gw, 3, 8).unwrap().passed());
    }

    #[test]
    fn perturbation_is_located() {
        let mut gv = GvTable::new("conifold", GenusBound::Conifold).with_exhaustive(true);
        gv.insert(0, 1, Integer::from(1)).unwrap();
        let gw = gv_to_gw(&gv, 2, 6).unwrap();
        let mut bad = GwTable::new("conifold", GenusBound::Conifold);
        for ((g, d), v) in gw.entries() {
            let v = if (*g, *d) == (2, 5) { Rational::from(v + 1) } else { v.clone() };
            bad.insert(*g, *d, v).unwrap();
        }
        let report = dirichlet_relations_check(&gv, &bad, 2, 6).unwrap();
        let f = report.failure.unwrap();
        assert_eq!((f.g, f.d), (2, 5));
    }
}
