//! Batch evaluation of Hesse-pencil quantities over a list of parameters.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{hesse_cubic, j_invariant_hesse, HesseCubic};
use crate::logsheaf::is_stable;
use crate::rational::{cube, format_rational, Rational};
use crate::torelli::cayleyan_hesse_param;

/// Column order of the CSV output.
pub const CSV_HEADER: &str = "t,smooth,j,s,cayleyan_smooth,stable,note";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub t: String,
    pub smooth: bool,
    pub j: Option<String>,
    pub s: Option<String>,
    pub cayleyan_smooth: Option<bool>,
    pub stable: Option<bool>,
    pub note: Option<String>,
}

impl SweepRow {
    pub fn to_csv(&self) -> String {
        let opt = |v: &Option<String>| v.clone().unwrap_or_default();
        let flag = |v: Option<bool>| v.map(|b| b.to_string()).unwrap_or_default();
        [
            self.t.clone(),
            self.smooth.to_string(),
            opt(&self.j),
            opt(&self.s),
            flag(self.cayleyan_smooth),
            flag(self.stable),
            opt(&self.note),
        ]
        .join(",")
    }
}

pub fn sweep_row(t: &Rational) -> SweepRow {
    let mut row = SweepRow {
        t: format_rational(t),
        smooth: HesseCubic::new(t.clone()).is_smooth(),
        j: None,
        s: None,
        cayleyan_smooth: None,
        stable: None,
        note: None,
    };
    if !row.smooth {
        row.note = Some("singular member (t^3 = 1)".into());
        return row;
    }
    row.j = j_invariant_hesse(t).ok().map(|j| format_rational(&j));
    match cayleyan_hesse_param(t) {
        Ok(s) => {
            row.cayleyan_smooth = Some(!num_traits::One::is_one(&cube(&s)));
            row.s = Some(format_rational(&s));
        }
        Err(e) => {
            row.cayleyan_smooth = Some(false);
            row.note = Some(e.to_string());
        }
    }
    row.stable = match is_stable(&hesse_cubic(t)) {
        Ok(b) => Some(b),
        Err(e) => {
            row.note = Some(e.to_string());
            None
        }
    };
    row
}

/// One row per parameter, in input order.
pub fn sweep(ts: &[Rational]) -> Result<Vec<SweepRow>> {
    if ts.is_empty() {
        return Err(Error::InvalidArgument("sweep needs at least one value of t".into()));
    }
    Ok(ts.iter().map(sweep_row).collect())
}
