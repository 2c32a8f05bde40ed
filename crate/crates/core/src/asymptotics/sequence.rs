//! Indexed numerical sequences and Richardson extrapolation.

use crate::arith::{richardson_weights, BigScalar};
use crate::invariants::GwTable;
use crate::{Error, Result};

/// Values at strictly increasing integer indices.
#[derive(Clone, Debug, PartialEq)]
pub struct SequenceSample {
    points: Vec<(i64, BigScalar)>,
}

impl SequenceSample {
    pub fn new(points: Vec<(i64, BigScalar)>) -> Result<Self> {
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidArgument("sequence indices must increase strictly".into()));
        }
        if let Some((n, _)) = points.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Domain(format!("non-finite sequence value at index {n}")));
        }
        Ok(SequenceSample { points })
    }

    pub fn from_fn(indices: impl IntoIterator<Item = i64>, mut f: impl FnMut(i64) -> BigScalar) -> Result<Self> {
        Self::new(indices.into_iter().map(|n| (n, f(n))).collect())
    }

    /// `d -> N_{g,d}` for every degree stored at genus `g`.
    pub fn from_genus(gw: &GwTable, g: u32, prec: crate::arith::Precision) -> Result<Self> {
        let slice = gw.genus_slice(g);
        if slice.is_empty() {
            return Err(Error::InsufficientData(format!("no invariants at genus {g}")));
        }
        Self::new(
            slice
                .into_iter()
                .map(|(d, v)| (i64::from(d), BigScalar::from_rational(&v, prec)))
                .collect(),
        )
    }

    pub fn points(&self) -> &[(i64, BigScalar)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, n: i64) -> Option<&BigScalar> {
        self.points
            .binary_search_by_key(&n, |(k, _)| *k)
            .ok()
            .map(|i| &self.points[i].1)
    }

    /// Value at `n`, or an insufficient-data error.
    pub fn require(&self, n: i64) -> Result<&BigScalar> {
        self.get(n)
            .ok_or_else(|| Error::InsufficientData(format!("sequence has no value at index {n}")))
    }

    pub fn last(&self) -> Option<&(i64, BigScalar)> {
        self.points.last()
    }

    /// Longest run of consecutive indices ending at the last point.
    pub fn trailing_run(&self) -> SequenceSample {
        let mut start = self.points.len().saturating_sub(1);
        while start > 0 && self.points[start - 1].0 + 1 == self.points[start].0 {
            start -= 1;
        }
        SequenceSample {
            points: self.points[start..].to_vec(),
        }
    }

    pub fn map(&self, mut f: impl FnMut(i64, &BigScalar) -> BigScalar) -> SequenceSample {
        SequenceSample {
            points: self.points.iter().map(|(n, v)| (*n, f(*n, v))).collect(),
        }
    }
}

/// Order-`N` Richardson transform
/// `R^N[s](n) = sum_{k=0}^{N} s(n+k) (n+k)^N (-1)^{k+N} / (k! (N-k)!)`,
/// which removes corrections `1/n, ..., 1/n^N`. The input must have
/// consecutive positive indices; the output is `N` points shorter.
pub fn richardson(seq: &SequenceSample, order: u32) -> Result<SequenceSample> {
    let pts = seq.points();
    if pts.len() <= order as usize {
        return Err(Error::InsufficientData(format!(
            "Richardson order {order} needs {} points, have {}",
            order + 1,
            pts.len()
        )));
    }
    if let Some(w) = pts.windows(2).find(|w| w[1].0 != w[0].0 + 1) {
        return Err(Error::InvalidArgument(format!(
            "Richardson needs consecutive indices; gap between {} and {}",
            w[0].0, w[1].0
        )));
    }
    if pts[0].0 < 1 {
        return Err(Error::InvalidArgument("Richardson indices must be positive".into()));
    }
    let mut out = Vec::with_capacity(pts.len() - order as usize);
    for i in 0..pts.len() - order as usize {
        let n = pts[i].0;
        let weights = richardson_weights(n as u64, order);
        let prec = pts[i].1.precision();
        let mut acc = BigScalar::zero(prec);
        for (k, w) in weights.iter().enumerate() {
            acc = &acc + &pts[i + k].1.mul_rational(w);
        }
        out.push((n, acc));
    }
    Ok(SequenceSample { points: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Precision;

    fn seq(f: impl Fn(i64) -> f64) -> SequenceSample {
        let prec = Precision::digits(50);
        SequenceSample::from_fn(5..30, |n| BigScalar::parse(&format!("{:e}", f(n)), prec).unwrap()).unwrap()
    }

    #[test]
    fn exact_on_inverse_powers() {
        let prec = Precision::digits(50);
        let s = SequenceSample::from_fn(3..20, |n| {
            let inv = BigScalar::from_i64(n, prec).recip();
            &(&BigScalar::one(prec) + &inv) + &(&inv * &inv)
        })
        .unwrap();
        let r = richardson(&s, 2).unwrap();
        for (_, v) in r.points() {
            assert!(v.agreement_digits(&BigScalar::one(prec)) >= 45);
        }
        let c = richardson(&seq(|_| 2.0), 3).unwrap();
        assert!(c.points().iter().all(|(_, v)| v.agreement_digits(&BigScalar::from_i64(2, prec)) >= 45));
    }

    #[test]
    fn rejects_gaps() {
        let prec = Precision::digits(20);
        let s = SequenceSample::new(vec![(1, BigScalar::one(prec)), (3, BigScalar::one(prec))]).unwrap();
        assert!(richardson(&s, 1).is_err());
        assert!(SequenceSample::new(vec![(2, BigScalar::one(prec)), (1, BigScalar::one(prec))]).is_err());
    }
}
