//! Exact tallies for enumerated set families.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, VertexSet};

/// Fractional digits in every decimal rendering.
pub const DECIMAL_DIGITS: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SetClass {
    #[serde(rename = "convex")]
    Convex,
    #[serde(rename = "connected-convex")]
    ConnectedConvex,
}

impl SetClass {
    pub fn as_str(self) -> &'static str {
        match self {
            SetClass::Convex => "convex",
            SetClass::ConnectedConvex => "connected-convex",
        }
    }

    /// Short tag used on the command line and in tables.
    pub fn short(self) -> &'static str {
        match self {
            SetClass::Convex => "co",
            SetClass::ConnectedConvex => "cc",
        }
    }
}

impl fmt::Display for SetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SetClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "co" | "convex" => Ok(SetClass::Convex),
            "cc" | "connected-convex" => Ok(SetClass::ConnectedConvex),
            _ => Err(Error::InvalidParameter(format!("unknown set class `{s}`"))),
        }
    }
}

/// Count, size histogram and size sum of one set class on one digraph.
///
/// `histogram[k - 1]` is the number of sets of size `k`, for `k = 1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ReportRepr", try_from = "ReportRepr")]
pub struct EnumerationReport {
    class: SetClass,
    n: usize,
    count: u64,
    sum: u64,
    histogram: Vec<u64>,
}

impl EnumerationReport {
    pub fn new(class: SetClass, n: usize) -> Self {
        EnumerationReport {
            class,
            n,
            count: 0,
            sum: 0,
            histogram: vec![0; n],
        }
    }

    /// Builds a report from a size histogram (`histogram[k - 1]` sets of
    /// size `k`).
    pub fn from_histogram(class: SetClass, histogram: Vec<u64>) -> Result<Self> {
        let mut report = Self::new(class, histogram.len());
        for (i, &c) in histogram.iter().enumerate() {
            let k = i as u64 + 1;
            report.count = report
                .count
                .checked_add(c)
                .ok_or(Error::Overflow("set count"))?;
            let weighted = c.checked_mul(k).ok_or(Error::Overflow("size sum"))?;
            report.sum = report
                .sum
                .checked_add(weighted)
                .ok_or(Error::Overflow("size sum"))?;
        }
        report.histogram = histogram;
        Ok(report)
    }

    pub fn record(&mut self, set: &VertexSet) {
        self.record_size(set.len());
    }

    pub fn record_size(&mut self, k: usize) {
        assert!(
            (1..=self.n).contains(&k),
            "set size {k} outside 1..={}",
            self.n
        );
        self.histogram[k - 1] += 1;
        self.count += 1;
        self.sum += k as u64;
    }

    pub fn class(&self) -> SetClass {
        self.class
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn sum(&self) -> u64 {
        self.sum
    }

    pub fn histogram(&self) -> &[u64] {
        &self.histogram
    }

    /// Number of sets of size `k` (zero outside `1..=n`).
    pub fn count_of_size(&self, k: usize) -> u64 {
        k.checked_sub(1)
            .and_then(|i| self.histogram.get(i))
            .copied()
            .unwrap_or(0)
    }

    /// Exact average set size.
    pub fn average(&self) -> Result<Ratio<u64>> {
        if self.count == 0 {
            return Err(Error::EmptyReport);
        }
        Ok(Ratio::new(self.sum, self.count))
    }

    pub fn statistics(&self) -> Result<Statistics> {
        Ok(Statistics {
            count: self.count,
            sum: self.sum,
            average: self.average()?,
        })
    }
}

/// `(count, Σ|C|, average)` of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Statistics {
    pub count: u64,
    pub sum: u64,
    pub average: Ratio<u64>,
}

impl Statistics {
    pub fn average_decimal(&self) -> String {
        format_ratio(*self.average.numer() as u128, *self.average.denom() as u128)
    }
}

/// Renders `num / den` with [`DECIMAL_DIGITS`] fractional digits, rounding
/// half to even.
pub fn format_ratio(num: u128, den: u128) -> String {
    assert!(den > 0, "zero denominator");
    let scale = 10u128.pow(DECIMAL_DIGITS);
    let mut whole = num / den;
    let scaled = (num % den) * scale;
    let mut frac = scaled / den;
    let rem = scaled % den;
    if 2 * rem > den || (2 * rem == den && frac % 2 == 1) {
        frac += 1;
        if frac == scale {
            frac = 0;
            whole += 1;
        }
    }
    format!("{whole}.{frac:0width$}", width = DECIMAL_DIGITS as usize)
}

#[derive(Serialize, Deserialize)]
struct ReportRepr {
    class: SetClass,
    n: usize,
    count: u64,
    sum: u64,
    average_num: u64,
    average_den: u64,
    average: String,
    histogram: Vec<u64>,
}

impl From<EnumerationReport> for ReportRepr {
    fn from(r: EnumerationReport) -> Self {
        let (average_num, average_den, average) = match r.average() {
            Ok(avg) => (
                *avg.numer(),
                *avg.denom(),
                format_ratio(*avg.numer() as u128, *avg.denom() as u128),
            ),
            Err(_) => (0, 1, format_ratio(0, 1)),
        };
        ReportRepr {
            class: r.class,
            n: r.n,
            count: r.count,
            sum: r.sum,
            average_num,
            average_den,
            average,
            histogram: r.histogram,
        }
    }
}

impl TryFrom<ReportRepr> for EnumerationReport {
    type Error = String;

    fn try_from(repr: ReportRepr) -> std::result::Result<Self, String> {
        if repr.histogram.len() != repr.n {
            return Err(format!(
                "histogram has {} entries for n = {}",
                repr.histogram.len(),
                repr.n
            ));
        }
        let report = EnumerationReport::from_histogram(repr.class, repr.histogram)
            .map_err(|e| e.to_string())?;
        if report.count != repr.count || report.sum != repr.sum {
            return Err("count or sum disagrees with histogram".into());
        }
        let expected: ReportRepr = report.clone().into();
        if (expected.average_num, expected.average_den) != (repr.average_num, repr.average_den)
            || expected.average != repr.average
        {
            return Err("average disagrees with count and sum".into());
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_connected_statistics() {
        let r =
            EnumerationReport::from_histogram(SetClass::ConnectedConvex, vec![3, 2, 1]).unwrap();
        let s = r.statistics().unwrap();
        assert_eq!((s.count, s.sum), (6, 10));
        assert_eq!(s.average, Ratio::new(5, 3));
        assert_eq!(s.average_decimal(), "1.666667");
    }

    #[test]
    fn single_vertex_and_p4() {
        let r = EnumerationReport::from_histogram(SetClass::Convex, vec![1]).unwrap();
        let s = r.statistics().unwrap();
        assert_eq!((s.count, s.sum, s.average), (1, 1, Ratio::from_integer(1)));
        let r =
            EnumerationReport::from_histogram(SetClass::ConnectedConvex, vec![4, 3, 2, 1]).unwrap();
        let s = r.statistics().unwrap();
        assert_eq!(
            (s.count, s.sum, s.average),
            (10, 20, Ratio::from_integer(2))
        );
    }

    #[test]
    fn empty_report_has_no_statistics() {
        assert_eq!(
            EnumerationReport::new(SetClass::Convex, 0).statistics(),
            Err(Error::EmptyReport)
        );
    }

    #[test]
    fn half_even_rounding() {
        assert_eq!(format_ratio(7, 3), "2.333333");
        assert_eq!(format_ratio(1, 8), "0.125000");
        // 0.0000005 ties to even (0), 0.0000015 ties to even (2).
        assert_eq!(format_ratio(1, 2_000_000), "0.000000");
        assert_eq!(format_ratio(3, 2_000_000), "0.000002");
        assert_eq!(format_ratio(1_999_999, 2_000_000), "1.000000");
        assert_eq!(format_ratio(2, 3), "0.666667");
    }

    #[test]
    fn json_shape_and_round_trip() {
        let r =
            EnumerationReport::from_histogram(SetClass::ConnectedConvex, vec![3, 2, 1]).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"class":"connected-convex","n":3,"count":6,"sum":10,"average_num":5,"average_den":3,"average":"1.666667","histogram":[3,2,1]}"#
        );
        let back: EnumerationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn inconsistent_json_is_rejected() {
        let bad = r#"{"class":"convex","n":3,"count":7,"sum":10,"average_num":5,"average_den":3,"average":"1.666667","histogram":[3,2,1]}"#;
        assert!(serde_json::from_str::<EnumerationReport>(bad).is_err());
    }
}
