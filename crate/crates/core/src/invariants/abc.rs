use std::collections::BTreeMap;

use rug::{Integer, Rational};

use super::GvTable;
use crate::arith::{binomial, divisors, f_cs, factorial, format_rational, int_pow};
use crate::{Error, Result};

/// Integer repackaging of GV data that makes the genus dependence of
/// `N_{g,d}` explicit:
///
/// `N_{g,d} = f_g { sum_{m|d} a_m (d/m)^{2g-3}
///            + (2g/B_{2g}) (1/d) (c_d delta_{g,1} + sum_m b_{d,m} m^{2g-2}) }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbcTable {
    geometry: String,
    dmax: u32,
    a: BTreeMap<u32, Integer>,
    b: BTreeMap<(u32, u32), Integer>,
    c: BTreeMap<u32, Integer>,
}

impl AbcTable {
    /// Assemble a table from stored coefficients; `a_d` and `c_d` must be
    /// present for every `d` in `1..=dmax`.
    pub fn from_parts(
        geometry: impl Into<String>,
        dmax: u32,
        a: BTreeMap<u32, Integer>,
        b: BTreeMap<(u32, u32), Integer>,
        c: BTreeMap<u32, Integer>,
    ) -> Result<Self> {
        for d in 1..=dmax {
            if !a.contains_key(&d) || !c.contains_key(&d) {
                return Err(Error::InsufficientData(format!("abc table lacks a or c at degree {d}")));
            }
        }
        if let Some(&(d, _)) = b.keys().find(|(d, m)| *d == 0 || *d > dmax || *m == 0) {
            return Err(Error::InvalidArgument(format!("b entry at degree {d} outside 1..={dmax}")));
        }
        Ok(AbcTable {
            geometry: geometry.into(),
            dmax,
            a,
            b,
            c,
        })
    }

    pub fn geometry(&self) -> &str {
        &self.geometry
    }

    pub fn dmax(&self) -> u32 {
        self.dmax
    }

    pub fn a(&self, d: u32) -> Option<&Integer> {
        self.a.get(&d)
    }

    pub fn c(&self, d: u32) -> Option<&Integer> {
        self.c.get(&d)
    }

    /// `b_{d,m}` (zero when not stored).
    pub fn b(&self, d: u32, m: u32) -> Integer {
        self.b.get(&(d, m)).cloned().unwrap_or_default()
    }

    /// Stored `(m, b_{d,m})` at degree `d`.
    pub fn b_row(&self, d: u32) -> Vec<(u32, Integer)> {
        self.b
            .range((d, 0)..=(d, u32::MAX))
            .map(|((_, m), v)| (*m, v.clone()))
            .collect()
    }

    pub fn a_entries(&self) -> &BTreeMap<u32, Integer> {
        &self.a
    }

    pub fn b_entries(&self) -> &BTreeMap<(u32, u32), Integer> {
        &self.b
    }

    pub fn c_entries(&self) -> &BTreeMap<u32, Integer> {
        &self.c
    }
}

fn to_integer(x: Rational, what: &str, d: u32) -> Result<Integer> {
    if x.denom() != &1 {
        return Err(Error::Inconsistent(format!(
            "{what} at degree {d} is not integral: {}",
            format_rational(&x)
        )));
    }
    Ok(x.into_numer_denom().0)
}

/// abc coefficients for degrees `1..=dmax`.
///
/// `b_{d,m}` is populated for every `m` that can receive a contribution,
/// i.e. `m <= max_{k|d} k (G(d/k) - 1)`. The `c_d` term uses
/// `C(2h-2, h-1)`, the combination fixed by the genus-1 multi-cover formula.
pub fn gv_to_abc(gv: &GvTable, dmax: u32) -> Result<AbcTable> {
    let mut out = AbcTable {
        geometry: gv.geometry().to_string(),
        dmax,
        a: BTreeMap::new(),
        b: BTreeMap::new(),
        c: BTreeMap::new(),
    };
    for d in 1..=dmax {
        out.a.insert(d, gv.get(0, d)?);

        let mut mmax = 0;
        for k in divisors(d) {
            let top = gv.genus_bound(d / k)?;
            if top >= 2 {
                mmax = mmax.max(k * (top - 1));
            }
        }
        for m in 1..=mmax {
            let mut acc = Rational::new();
            for k in divisors(d).into_iter().filter(|k| m % k == 0) {
                let q = m / k;
                let beta = d / k;
                let mut inner = Integer::new();
                for h in q + 1..=gv.genus_bound(beta)? {
                    let n = gv.get(h, beta)?;
                    if n != 0 {
                        inner += n * binomial(2 * i64::from(h) - 2, i64::from(h - 1 + q));
                    }
                }
                let mut term = Rational::from(inner * (2 * d)) / k;
                if q % 2 == 1 {
                    term = -term;
                }
                acc += term;
            }
            out.b.insert((d, m), to_integer(acc, "b", d)?);
        }

        let mut c = Rational::new();
        for m in divisors(d) {
            let mut inner = gv.get(1, m)?;
            for h in 2..=gv.genus_bound(m)? {
                inner += gv.get(h, m)? * binomial(2 * i64::from(h) - 2, i64::from(h) - 1);
            }
            c += Rational::from(inner * m);
        }
        out.c.insert(d, to_integer(c, "c", d)?);
    }
    Ok(out)
}

/// `N_{g,d}` from abc coefficients; valid for every genus `g >= 0`.
pub fn abc_to_gw(abc: &AbcTable, g: u32, d: u32) -> Result<Rational> {
    if d == 0 || d > abc.dmax {
        return Err(Error::InsufficientData(format!(
            "abc table covers degrees 1..={}, requested {d}",
            abc.dmax
        )));
    }
    let mut a_part = Rational::new();
    for m in divisors(d) {
        let a = &abc.a[&m];
        a_part += a * int_pow(u64::from(d / m), 2 * i64::from(g) - 3) ;
    }
    let mut total = f_cs(g) * a_part;
    if g >= 1 {
        let mut bracket = Rational::new();
        if g == 1 {
            bracket += &abc.c[&d];
        }
        for (m, b) in abc.b_row(d) {
            bracket += b * int_pow(u64::from(m), 2 * i64::from(g) - 2) ;
        }
        // f_g * 2g / B_{2g} = (-1)^{g-1} / (2g-2)!
        let mut scale = Rational::from((Integer::from(1), factorial(2 * g - 2) * d));
        if g.is_multiple_of(2) {
            scale = -scale;
        }
        total += bracket * scale;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::invariants::{gv_to_gw, GenusBound};

    fn local_p2() -> GvTable {
        let mut t = GvTable::new("local-p2", GenusBound::LocalP2);
        for (r, d, n) in [(0, 1, 3), (0, 2, -6), (0, 3, 27), (1, 3, -10), (0, 4, -192), (1, 4, 231), (2, 4, -102), (3, 4, 15)] {
            t.insert(r, d, Integer::from(n)).unwrap();
        }
        t
    }

    #[test]
    fn conifold_has_only_a1() {
        let mut t = GvTable::new("conifold", GenusBound::Conifold).with_exhaustive(true);
        t.insert(0, 1, Integer::from(1)).unwrap();
        let abc = gv_to_abc(&t, 6).unwrap();
        assert_eq!(abc.a(1).unwrap(), &1);
        assert!((2..=6).all(|d| abc.a(d).unwrap() == &0));
        assert!(abc.b_entries().values().all(|b| *b == 0));
        assert!(abc.c_entries().values().all(|c| *c == 0));
        assert_eq!(abc_to_gw(&abc, 2, 3).unwrap(), rat(1, 80));
    }

    #[test]
    fn local_p2_degree_four_coefficients() {
        let abc = gv_to_abc(&local_p2(), 4).unwrap();
        assert_eq!(abc.a(1).unwrap(), &3);
        assert_eq!(abc.a(2).unwrap(), &-6);
        assert_eq!(abc.a(4).unwrap(), &-192);
        assert_eq!(abc.b(4, 1), 336);
        assert_eq!(abc.b(4, 2), 120);
    }

    #[test]
    fn abc_reproduces_multicover_formula() {
        let gv = local_p2();
        let abc = gv_to_abc(&gv, 4).unwrap();
        let gw = gv_to_gw(&gv, 12, 4).unwrap();
        for g in 0..=12 {
            for d in 1..=4 {
                assert_eq!(&abc_to_gw(&abc, g, d).unwrap(), gw.get(g, d).unwrap(), "g={g} d={d}");
            }
        }
    }

    #[test]
    fn only_c_is_invisible_above_genus_one() {
        let mut t = GvTable::new("x", GenusBound::Inferred);
        t.insert(1, 1, Integer::from(5)).unwrap();
        let abc = gv_to_abc(&t, 1).unwrap();
        assert_eq!(abc.c(1).unwrap(), &5);
        assert_eq!(abc_to_gw(&abc, 3, 1).unwrap(), 0);
    }
}
