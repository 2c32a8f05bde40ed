//! `convert`: GV, GW and abc representations of the same invariants.

use super::gen::table_to_gw;
use super::output::emit;
use super::{ConvertArgs, Kind, Ranges};
use crate::geometries::{format_table, load_table, Table};
use crate::invariants::{gv_to_abc, gw_to_gv, GvTable};
use crate::{Error, Result};

pub(super) fn run(args: &ConvertArgs) -> Result<()> {
    let input = load_table(&args.input)?;
    let ranges = Ranges {
        g: None,
        gmin: None,
        gmax: args.gmax,
        d: None,
        dmin: None,
        dmax: args.dmax,
    };
    let output = convert(input, args.to, &ranges)?;
    emit(args.output.as_deref(), format_table(&output, &[]).as_bytes())
}

pub(super) fn convert(input: Table, to: Kind, ranges: &Ranges) -> Result<Table> {
    Ok(match (to, input) {
        (Kind::Gv, Table::Gv(gv)) => Table::Gv(gv),
        (Kind::Gw, Table::Gw(gw)) => Table::Gw(gw),
        (Kind::Abc, Table::Abc(abc)) => Table::Abc(abc),
        (Kind::Gw, other) => Table::Gw(table_to_gw(other, ranges)?),
        (Kind::Gv, Table::Gw(gw)) => Table::Gv(gw_to_gv(&gw)?),
        (Kind::Gv, abc @ Table::Abc(_)) => Table::Gv(gw_to_gv(&table_to_gw(abc, ranges)?)?),
        (Kind::Abc, Table::Gv(gv)) => Table::Abc(to_abc(&gv, ranges)?),
        (Kind::Abc, Table::Gw(gw)) => Table::Abc(to_abc(&gw_to_gv(&gw)?, ranges)?),
    })
}

fn to_abc(gv: &GvTable, ranges: &Ranges) -> Result<crate::invariants::AbcTable> {
    let dmax = ranges
        .dmax
        .or(gv.max_degree())
        .ok_or_else(|| Error::InsufficientData("GV table has no degrees".into()))?;
    gv_to_abc(gv, dmax)
}
