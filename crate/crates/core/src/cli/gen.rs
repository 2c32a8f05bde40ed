//! `gen`: GW tables from a named geometry or a GV file.

use rug::Rational;

use super::output::emit;
use super::{GenArgs, Ranges, SignConvention, Source};
use crate::geometries::{
    conifold_gv_table, conifold_gw, format_table, hurwitz_gw_table, load_table, xp_gw_table, GeometryId, Table,
    XpSign,
};
use crate::invariants::{abc_to_gw, gv_to_gw, GwTable};
use crate::{Error, Result};

pub(super) fn run(args: &GenArgs) -> Result<()> {
    let (table, notes) = generate(&args.source, &args.ranges)?;
    let text = format_table(&Table::Gw(table), &notes);
    emit(args.output.as_deref(), text.as_bytes())
}

/// The geometry named by `--geometry` / `--p`, if any.
pub(super) fn geometry_id(source: &Source) -> Result<Option<GeometryId>> {
    let Some(name) = source.geometry.as_deref() else {
        return Ok(source.p.map(GeometryId::LocalCurve));
    };
    if name == "xp" {
        return match source.p {
            Some(p) if p >= 3 => Ok(Some(GeometryId::LocalCurve(p))),
            Some(p) => Err(Error::InvalidArgument(format!("local curves need p >= 3, got {p}"))),
            None => Err(Error::InvalidArgument("--geometry xp needs --p".into())),
        };
    }
    let id: GeometryId = name.parse()?;
    if let (GeometryId::LocalCurve(p), Some(q)) = (id, source.p) {
        if p != q {
            return Err(Error::InvalidArgument(format!("--geometry {name} conflicts with --p {q}")));
        }
    }
    Ok(Some(id))
}

/// GW table for the requested ranges plus header notes describing it.
pub(super) fn generate(source: &Source, ranges: &Ranges) -> Result<(GwTable, Vec<(&'static str, String)>)> {
    if let Some(path) = &source.input {
        let table = load_table(path)?;
        return Ok((table_to_gw(table, ranges)?, Vec::new()));
    }
    let id = geometry_id(source)?
        .ok_or_else(|| Error::InvalidArgument("either --geometry or --input is required".into()))?;
    let (dlo, dhi) = ranges.degrees(None)?;
    let gw = match id {
        GeometryId::Conifold => {
            let (glo, ghi) = ranges.genera(2)?;
            conifold_table(glo, ghi, dhi)?
        }
        GeometryId::LocalCurve(p) => {
            let (glo, ghi) = ranges.genera(0)?;
            let sign = match source.sign_convention {
                SignConvention::Gv => XpSign::Gv,
                SignConvention::Raw => XpSign::Raw,
            };
            let gw = xp_gw_table(p, glo..=ghi, dhi, sign)?;
            let name = match sign {
                XpSign::Gv => "gv",
                XpSign::Raw => "raw",
            };
            return Ok((restrict(gw, dlo, dhi)?, vec![("sign", name.to_string())]));
        }
        GeometryId::Hurwitz => {
            let (glo, ghi) = ranges.genera(0)?;
            hurwitz_gw_table(glo..=ghi, dhi)?
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "geometry '{other}' is table based; pass its GV table with --input"
            )))
        }
    };
    Ok((restrict(gw, dlo, dhi)?, Vec::new()))
}

/// Conifold GW invariants; genera 0 and 1 go through the multi-cover formula.
pub(super) fn conifold_table(glo: u32, ghi: u32, dmax: u32) -> Result<GwTable> {
    let low = if glo < 2 {
        Some(gv_to_gw(&conifold_gv_table(), ghi.min(1), dmax)?)
    } else {
        None
    };
    let mut gw = GwTable::new("conifold", crate::invariants::GenusBound::Conifold);
    for g in glo..=ghi {
        for d in 1..=dmax {
            let v = match &low {
                Some(t) if g < 2 => t.require(g, d)?.clone(),
                _ => conifold_gw(g, d)?,
            };
            gw.insert(g, d, v)?;
        }
    }
    Ok(gw)
}

/// GW data from any table kind. GV and abc input need a genus range; it
/// defaults to the largest genus where GV invariants can be nonzero.
pub(super) fn table_to_gw(table: Table, ranges: &Ranges) -> Result<GwTable> {
    match table {
        Table::Gw(gw) => {
            let (dlo, dhi) = ranges.degrees(gw.max_degree())?;
            let (glo, ghi) = match (ranges.g, ranges.gmin, ranges.gmax) {
                (None, None, None) => (0, u32::MAX),
                _ => ranges.genera(0)?,
            };
            filter(gw, |g, d| (glo..=ghi).contains(&g) && (dlo..=dhi).contains(&d))
        }
        Table::Gv(gv) => {
            let (dlo, dhi) = ranges.degrees(gv.max_degree())?;
            let top = (1..=dhi).map(|d| gv.genus_bound(d)).collect::<Result<Vec<_>>>()?;
            let default_top = top.into_iter().max().unwrap_or(0);
            let (glo, ghi) = genus_window(ranges, default_top)?;
            let gw = gv_to_gw(&gv, ghi, dhi)?;
            filter(gw, |g, d| g >= glo && d >= dlo)
        }
        Table::Abc(abc) => {
            let (dlo, dhi) = ranges.degrees(Some(abc.dmax()))?;
            let default_top = abc.b_entries().keys().map(|(_, m)| m + 1).max().unwrap_or(1);
            let (glo, ghi) = genus_window(ranges, default_top)?;
            let mut gw = GwTable::new(abc.geometry(), crate::invariants::GenusBound::Inferred);
            for g in glo..=ghi {
                for d in dlo..=dhi {
                    gw.insert(g, d, abc_to_gw(&abc, g, d)?)?;
                }
            }
            Ok(gw)
        }
    }
}

fn genus_window(ranges: &Ranges, default_top: u32) -> Result<(u32, u32)> {
    match (ranges.g, ranges.gmin, ranges.gmax) {
        (None, None, None) => Ok((0, default_top)),
        (None, Some(lo), None) => super::nonempty("genus", lo, default_top.max(lo)),
        _ => ranges.genera(0),
    }
}

fn restrict(gw: GwTable, dlo: u32, dhi: u32) -> Result<GwTable> {
    filter(gw, |_, d| (dlo..=dhi).contains(&d))
}

fn filter(gw: GwTable, keep: impl Fn(u32, u32) -> bool) -> Result<GwTable> {
    let mut out = GwTable::new(gw.geometry(), gw.bound());
    for ((g, d), v) in gw.entries() {
        if keep(*g, *d) {
            out.insert(*g, *d, Rational::from(v))?;
        }
    }
    if out.is_empty() {
        return Err(Error::InsufficientData("no invariants in the requested ranges".into()));
    }
    Ok(out)
}
