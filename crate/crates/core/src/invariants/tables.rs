use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rug::{Integer, Rational};

use crate::arith::RationalExt;
use crate::{Error, Result};

/// Degree-dependent bound `G(d)` above which GV invariants vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenusBound {
    /// `(d-1)(d-2)/2`
    LocalP2,
    /// `floor(d(d-4)/4) + 1`
    Abjm,
    /// Local curve `X_p`: `(d-1)((p-2)d-2)/2`
    LocalCurve(u32),
    /// Only genus 0 contributes.
    Conifold,
    /// Largest genus with a nonzero entry, read from the data.
    Inferred,
}

impl GenusBound {
    /// Closed-form bound, if the geometry has one.
    pub fn formula(&self, d: u32) -> Option<u32> {
        let d = i64::from(d);
        let g = match self {
            GenusBound::LocalP2 => (d - 1) * (d - 2) / 2,
            GenusBound::Abjm => (d * (d - 4)).div_euclid(4) + 1,
            GenusBound::LocalCurve(p) => (d - 1) * ((i64::from(*p) - 2) * d - 2) / 2,
            GenusBound::Conifold => 0,
            GenusBound::Inferred => return None,
        };
        Some(g.max(0) as u32)
    }
}

impl fmt::Display for GenusBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenusBound::LocalP2 => f.write_str("local-p2"),
            GenusBound::Abjm => f.write_str("abjm"),
            GenusBound::LocalCurve(p) => write!(f, "xp:{p}"),
            GenusBound::Conifold => f.write_str("conifold"),
            GenusBound::Inferred => f.write_str("inferred"),
        }
    }
}

impl FromStr for GenusBound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "local-p2" => GenusBound::LocalP2,
            "abjm" => GenusBound::Abjm,
            "conifold" => GenusBound::Conifold,
            "inferred" => GenusBound::Inferred,
            other => match other.strip_prefix("xp:").map(str::parse::<u32>) {
                Some(Ok(p)) if p >= 3 => GenusBound::LocalCurve(p),
                _ => return Err(Error::InvalidArgument(format!("unknown genus bound '{other}'"))),
            },
        })
    }
}

/// Integer GV invariants `n_r^{(d)}` indexed by `(r, d)`.
///
/// A table either lists a set of degrees explicitly or is *exhaustive*, in
/// which case unlisted degrees carry only zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GvTable {
    geometry: String,
    bound: GenusBound,
    exhaustive: bool,
    entries: BTreeMap<(u32, u32), Integer>,
    degrees: BTreeSet<u32>,
}

impl GvTable {
    pub fn new(geometry: impl Into<String>, bound: GenusBound) -> Self {
        GvTable {
            geometry: geometry.into(),
            bound,
            exhaustive: false,
            entries: BTreeMap::new(),
            degrees: BTreeSet::new(),
        }
    }

    pub fn with_exhaustive(mut self, exhaustive: bool) -> Self {
        self.exhaustive = exhaustive;
        self
    }

    pub fn geometry(&self) -> &str {
        &self.geometry
    }

    pub fn bound(&self) -> GenusBound {
        self.bound
    }

    pub fn is_exhaustive(&self) -> bool {
        self.exhaustive
    }

    /// Add an entry; duplicates and degree 0 are rejected.
    pub fn insert(&mut self, r: u32, d: u32, value: Integer) -> Result<()> {
        if d == 0 {
            return Err(Error::InvalidArgument("GV degree must be at least 1".into()));
        }
        if self.entries.contains_key(&(r, d)) {
            return Err(Error::InvalidArgument(format!("duplicate GV entry (r={r}, d={d})")));
        }
        self.degrees.insert(d);
        self.entries.insert((r, d), value);
        Ok(())
    }

    /// Mark a degree as present even if all of its entries are zero.
    pub fn declare_degree(&mut self, d: u32) {
        self.degrees.insert(d);
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.degrees.iter().copied()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.degrees.last().copied()
    }

    pub fn has_degree(&self, d: u32) -> bool {
        self.exhaustive || self.degrees.contains(&d)
    }

    /// `G(d)` for this table.
    pub fn genus_bound(&self, d: u32) -> Result<u32> {
        if let Some(g) = self.bound.formula(d) {
            return Ok(g);
        }
        if !self.has_degree(d) {
            return Err(Error::MissingDivisorData { r: 0, beta: d });
        }
        Ok(self
            .entries
            .range((0, d)..)
            .filter(|((_, dd), v)| *dd == d && *v != &0)
            .map(|((r, _), _)| *r)
            .max()
            .unwrap_or(0))
    }

    /// `n_r^{(d)}`, zero above `G(d)`; missing required entries are errors.
    pub fn get(&self, r: u32, d: u32) -> Result<Integer> {
        if !self.has_degree(d) {
            return Err(Error::MissingDivisorData { r, beta: d });
        }
        if r > self.genus_bound(d)? {
            return Ok(Integer::new());
        }
        match self.entries.get(&(r, d)) {
            Some(v) => Ok(v.clone()),
            None if self.exhaustive || self.bound == GenusBound::Inferred => Ok(Integer::new()),
            None => Err(Error::MissingDivisorData { r, beta: d }),
        }
    }

    /// All stored entries, keyed by `(r, d)`.
    pub fn entries(&self) -> &BTreeMap<(u32, u32), Integer> {
        &self.entries
    }

    /// Entries with nonzero value; the canonical content of the table.
    pub fn nonzero_entries(&self) -> BTreeMap<(u32, u32), Integer> {
        self.entries.iter().filter(|(_, v)| **v != 0).map(|(k, v)| (*k, v.clone())).collect()
    }
}

/// Rational GW invariants `N_{g,d}` indexed by `(g, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwTable {
    geometry: String,
    bound: GenusBound,
    entries: BTreeMap<(u32, u32), Rational>,
}

impl GwTable {
    pub fn new(geometry: impl Into<String>, bound: GenusBound) -> Self {
        GwTable {
            geometry: geometry.into(),
            bound,
            entries: BTreeMap::new(),
        }
    }

    pub fn geometry(&self) -> &str {
        &self.geometry
    }

    pub fn bound(&self) -> GenusBound {
        self.bound
    }

    pub fn insert(&mut self, g: u32, d: u32, value: Rational) -> Result<()> {
        if d == 0 {
            return Err(Error::InvalidArgument("GW degree must be at least 1".into()));
        }
        if self.entries.contains_key(&(g, d)) {
            return Err(Error::InvalidArgument(format!("duplicate GW entry (g={g}, d={d})")));
        }
        self.entries.insert((g, d), value);
        Ok(())
    }

    pub fn get(&self, g: u32, d: u32) -> Option<&Rational> {
        self.entries.get(&(g, d))
    }

    /// Like [`get`](Self::get) but reports the gap as an error.
    pub fn require(&self, g: u32, d: u32) -> Result<&Rational> {
        self.get(g, d)
            .ok_or_else(|| Error::InsufficientData(format!("no GW invariant for g={g}, d={d}")))
    }

    pub fn entries(&self) -> &BTreeMap<(u32, u32), Rational> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn genera(&self) -> BTreeSet<u32> {
        self.entries.keys().map(|(g, _)| *g).collect()
    }

    pub fn degrees(&self) -> BTreeSet<u32> {
        self.entries.keys().map(|(_, d)| *d).collect()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.entries.keys().map(|(_, d)| *d).max()
    }

    /// Genera available at degree `d`, ascending.
    pub fn genera_at(&self, d: u32) -> Vec<u32> {
        self.entries.keys().filter(|(_, dd)| *dd == d).map(|(g, _)| *g).collect()
    }

    /// `(d, N_{g,d})` at fixed genus, ascending in `d`.
    pub fn genus_slice(&self, g: u32) -> Vec<(u32, Rational)> {
        self.entries
            .range((g, 0)..=(g, u32::MAX))
            .map(|((_, d), v)| (*d, v.clone()))
            .collect()
    }

    /// True when every stored value is zero.
    pub fn is_identically_zero(&self) -> bool {
        self.entries.values().all(|v| v.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_bounds() {
        assert_eq!(GenusBound::LocalP2.formula(4), Some(3));
        assert_eq!(GenusBound::Abjm.formula(1), Some(0));
        assert_eq!(GenusBound::Abjm.formula(4), Some(1));
        assert_eq!(GenusBound::Abjm.formula(6), Some(4));
        assert_eq!(GenusBound::LocalCurve(3).formula(3), Some(1));
        assert_eq!(GenusBound::LocalCurve(4).formula(2), Some(1));
        assert_eq!(GenusBound::Inferred.formula(2), None);
        for b in [GenusBound::LocalP2, GenusBound::Abjm, GenusBound::LocalCurve(5), GenusBound::Conifold, GenusBound::Inferred] {
            assert_eq!(b.to_string().parse::<GenusBound>().unwrap(), b);
        }
    }

    #[test]
    fn missing_entries_are_reported() {
        let mut t = GvTable::new("local-p2", GenusBound::LocalP2);
        t.insert(0, 1, Integer::from(3)).unwrap();
        t.insert(0, 3, Integer::from(27)).unwrap();
        assert_eq!(t.get(0, 1).unwrap(), 3);
        assert_eq!(t.get(5, 1).unwrap(), 0);
        assert!(matches!(t.get(0, 2), Err(Error::MissingDivisorData { r: 0, beta: 2 })));
        assert!(matches!(t.get(1, 3), Err(Error::MissingDivisorData { r: 1, beta: 3 })));
        assert!(t.insert(0, 1, Integer::from(3)).is_err());
        assert!(t.insert(0, 0, Integer::from(3)).is_err());
    }

    #[test]
    fn exhaustive_tables_fill_zeros() {
        let mut t = GvTable::new("conifold", GenusBound::Conifold).with_exhaustive(true);
        t.insert(0, 1, Integer::from(1)).unwrap();
        assert_eq!(t.get(0, 7).unwrap(), 0);
    }
}
