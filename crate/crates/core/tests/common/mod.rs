#![allow(dead_code)]

use std::path::PathBuf;

use gw_asymptotics::arith::Integer;
use gw_asymptotics::invariants::{GenusBound, GvTable};
use proptest::prelude::*;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Random integer GV data: per degree a bound `G(d) <= gmax` and entries
/// in `-bound..=bound` for every genus up to it.
pub fn random_gv(dmax: u32, gmax: u32, bound: i64) -> impl Strategy<Value = GvTable> {
    let degree = (0..=gmax).prop_flat_map(move |top| prop::collection::vec(-bound..=bound, top as usize + 1));
    prop::collection::vec(degree, dmax as usize).prop_map(|rows| {
        let mut gv = GvTable::new("random", GenusBound::Inferred);
        for (i, row) in rows.into_iter().enumerate() {
            let d = i as u32 + 1;
            gv.declare_degree(d);
            for (r, n) in row.into_iter().enumerate() {
                if n != 0 {
                    gv.insert(r as u32, d, Integer::from(n)).unwrap();
                }
            }
        }
        gv
    })
}
