mod common;

use common::fixture;
use gw_asymptotics::arith::rat;
use gw_asymptotics::geometries::{load_table, Table};
use gw_asymptotics::invariants::{abc_to_gw, gv_to_abc, gv_to_gw, gw_to_gv, GvTable};

fn gv(name: &str) -> GvTable {
    match load_table(&fixture(name)).unwrap() {
        Table::Gv(t) => t,
        other => panic!("expected a GV table, got {}", other.kind()),
    }
}

#[test]
fn degree_one_genus_two() {
    for (file, expected) in [
        ("local_p2_gv.tsv", rat(1, 80)),
        ("abjm_gv.tsv", rat(-1, 60)),
        ("quintic_gv.tsv", rat(575, 48)),
    ] {
        let gw = gv_to_gw(&gv(file), 2, 1).unwrap();
        assert_eq!(gw.get(2, 1).unwrap(), &expected, "{file}");
    }
}

#[test]
fn fixtures_round_trip() {
    for file in ["local_p2_gv.tsv", "abjm_gv.tsv", "quintic_gv.tsv"] {
        let table = gv(file);
        let dmax = table.max_degree().unwrap();
        let gmax = (1..=dmax).map(|d| table.genus_bound(d).unwrap()).max().unwrap();
        let gw = gv_to_gw(&table, gmax, dmax).unwrap();
        assert_eq!(gw_to_gv(&gw).unwrap().nonzero_entries(), table.nonzero_entries(), "{file}");
        let abc = gv_to_abc(&table, dmax).unwrap();
        for ((g, d), v) in gw.entries() {
            assert_eq!(&abc_to_gw(&abc, *g, *d).unwrap(), v, "{file} g={g} d={d}");
        }
    }
}

#[test]
fn local_p2_abc_coefficients() {
    let abc = gv_to_abc(&gv("local_p2_gv.tsv"), 4).unwrap();
    assert_eq!(*abc.a(4).unwrap(), -192);
    assert_eq!(abc.b(4, 1), 336);
    assert_eq!(abc.b(4, 2), 120);
}
