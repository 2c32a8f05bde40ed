use rug::{Integer, Rational};

use super::{GenusBound, GvTable, GwTable, SineTable};
use crate::arith::{divisors, format_rational, int_pow, RationalExt};
use crate::{Error, Result};

/// Multi-cover formula
/// `N_{g,d} = sum_r c_{r,g} sum_{b|d} n_r^{(b)} (d/b)^{2g-3}`
/// for `0 <= g <= gmax`, `1 <= d <= dmax`.
pub fn gv_to_gw(gv: &GvTable, gmax: u32, dmax: u32) -> Result<GwTable> {
    let sine = SineTable::new(gmax);
    let mut out = GwTable::new(gv.geometry(), gv.bound());
    for d in 1..=dmax {
        // (r, beta, n) triples contributing at this degree
        let mut terms = Vec::new();
        for beta in divisors(d) {
            let top = gv.genus_bound(beta)?.min(gmax);
            for r in 0..=top {
                let n = gv.get(r, beta)?;
                if n != 0 {
                    terms.push((r, d / beta, n));
                }
            }
        }
        for g in 0..=gmax {
            out.insert(g, d, multicover_sum(&sine, g, &terms))?;
        }
    }
    Ok(out)
}

fn multicover_sum(sine: &SineTable, g: u32, terms: &[(u32, u32, Integer)]) -> Rational {
    let mut acc = Rational::new();
    for (r, ratio, n) in terms {
        let c = sine.get(*r, g);
        if c.is_zero() {
            continue;
        }
        acc += Rational::from(c * n) * int_pow(u64::from(*ratio), 2 * i64::from(g) - 3);
    }
    acc
}

/// Inverse of [`gv_to_gw`]: ascending in degree, subtract the multi-cover
/// contributions of proper divisors, then solve the unit-triangular system
/// in the genus index.
///
/// With a closed-form `G(d)` the genera present at each degree may be any
/// set that determines the `G(d)+1` unknowns; surplus equations are checked.
/// With an inferred bound the genera at each degree must be `0..=m`.
pub fn gw_to_gv(gw: &GwTable) -> Result<GvTable> {
    let dmax = gw
        .max_degree()
        .ok_or_else(|| Error::InsufficientData("empty GW table".into()))?;
    let gmax = gw.genera().last().copied().unwrap_or(0);
    let sine = SineTable::new(gmax);
    let mut gv = GvTable::new(gw.geometry(), gw.bound());

    for d in 1..=dmax {
        let genera = gw.genera_at(d);
        if genera.is_empty() {
            return Err(Error::InsufficientData(format!("no GW invariants at degree {d}")));
        }
        let unknowns = match gw.bound().formula(d) {
            Some(top) => top + 1,
            None => {
                let m = *genera.last().expect("nonempty");
                if genera.len() as u32 != m + 1 {
                    return Err(Error::InsufficientData(format!(
                        "degree {d}: inferred genus bound needs every genus 0..={m}"
                    )));
                }
                m + 1
            }
        };
        if (genera.len() as u32) < unknowns {
            return Err(Error::InsufficientData(format!(
                "degree {d}: {} GW genera available, {unknowns} GV unknowns",
                genera.len()
            )));
        }

        let mut lower = Vec::new();
        for beta in divisors(d).into_iter().filter(|&b| b < d) {
            for r in 0..=gv.genus_bound(beta)? {
                let n = gv.get(r, beta)?;
                if n != 0 {
                    lower.push((r, d / beta, n));
                }
            }
        }
        let rows: Vec<(u32, Rational)> = genera
            .iter()
            .map(|&g| {
                let n = gw.get(g, d).expect("listed genus");
                (g, Rational::from(n - &multicover_sum(&sine, g, &lower)))
            })
            .collect();

        let solution = solve_degree(&sine, &rows, unknowns, d)?;
        gv.declare_degree(d);
        for (r, x) in solution.into_iter().enumerate() {
            let r = r as u32;
            if x.denom() != &1 {
                return Err(Error::NonIntegral {
                    r,
                    d,
                    value: format_rational(&x),
                });
            }
            let n = x.numer().clone();
            if n != 0 || gw.bound() != GenusBound::Inferred {
                gv.insert(r, d, n)?;
            }
        }
    }
    Ok(gv)
}

/// Solve `sum_{r<k} c_{r,g} x_r = rhs_g` over the listed genera and check
/// every equation.
fn solve_degree(sine: &SineTable, rows: &[(u32, Rational)], k: u32, d: u32) -> Result<Vec<Rational>> {
    let k = k as usize;
    let contiguous = rows.len() >= k && rows.iter().take(k).enumerate().all(|(i, (g, _))| *g as usize == i);
    let x = if contiguous {
        // unit lower-triangular forward substitution
        let mut x: Vec<Rational> = Vec::with_capacity(k);
        for (g, rhs) in rows.iter().take(k) {
            let mut acc = rhs.clone();
            for (r, xr) in x.iter().enumerate() {
                acc -= Rational::from(sine.get(r as u32, *g) * xr);
            }
            x.push(acc);
        }
        x
    } else {
        gaussian_solve(sine, rows, k, d)?
    };

    for (g, rhs) in rows {
        let mut lhs = Rational::new();
        for (r, xr) in x.iter().enumerate() {
            lhs += Rational::from(sine.get(r as u32, *g) * xr);
        }
        if &lhs != rhs {
            return Err(Error::Inconsistent(format!(
                "GW data at genus {g}, degree {d} is not reproduced by any GV table with G({d}) = {}",
                k - 1
            )));
        }
    }
    Ok(x)
}

fn gaussian_solve(sine: &SineTable, rows: &[(u32, Rational)], k: usize, d: u32) -> Result<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|(g, rhs)| {
            let mut row: Vec<Rational> = (0..k).map(|r| sine.get(r as u32, *g).clone()).collect();
            row.push(rhs.clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..k {
        let Some(p) = (pivot_row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            return Err(Error::InsufficientData(format!(
                "degree {d}: available genera do not determine GV index {col}"
            )));
        };
        m.swap(pivot_row, p);
        let inv = Rational::from(m[pivot_row][col].recip_ref());
        for v in m[pivot_row].iter_mut() {
            *v *= &inv;
        }
        for i in 0..m.len() {
            if i != pivot_row && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for j in col..=k {
                    let delta = Rational::from(&m[pivot_row][j] * &factor);
                    m[i][j] -= delta;
                }
            }
        }
        pivot_row += 1;
    }
    Ok((0..k).map(|r| m[r][k].clone()).collect())
}
