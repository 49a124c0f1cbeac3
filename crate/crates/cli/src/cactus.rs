//! Cactus-plot data: for each variant, the point `(t, n)` means `n`
//! instances were solved within `t` seconds each.

use std::collections::BTreeMap;
use std::io::Write;

use mcs_core::policy::PolicyVariant;

use crate::bench::{RunRow, Status};

#[derive(Clone, Debug, PartialEq)]
pub struct CactusSeries {
    pub variant: PolicyVariant,
    pub points: Vec<(f64, usize)>,
}

/// One series per variant, in variant order. Unsolved and failed runs are
/// left out, so a series ends at the variant's solved count.
pub fn emit_cactus_data(rows: &[RunRow]) -> Vec<CactusSeries> {
    let mut times: BTreeMap<PolicyVariant, Vec<f64>> = BTreeMap::new();
    for row in rows {
        let entry = times.entry(row.policy()).or_default();
        if row.solved == Status::Solved {
            entry.push(row.seconds.unwrap_or(0.0));
        }
    }
    times
        .into_iter()
        .map(|(variant, mut t)| {
            t.sort_by(f64::total_cmp);
            CactusSeries { variant, points: t.into_iter().enumerate().map(|(i, t)| (t, i + 1)).collect() }
        })
        .collect()
}

/// Long-format CSV `variant,seconds,solved`.
pub fn write_cactus_csv<W: Write>(series: &[CactusSeries], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["variant", "seconds", "solved"])?;
    for s in series {
        for &(t, n) in &s.points {
            w.write_record([s.variant.to_string(), t.to_string(), n.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}
