//! Command results, their JSON shape and their text rendering.

use std::fmt::{self, Display, Write};
use std::str::FromStr;

use covercalc_core::ribbon::{ObstructionReport, Verdict};
use num_bigint::{BigInt, BigUint};
use serde::{de, ser, Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

/// Integer written as a bare JSON number of any size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Num<T>(pub T);

impl<T: Display> Serialize for Num<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n: serde_json::Number = self.0.to_string().parse().map_err(ser::Error::custom)?;
        n.serialize(s)
    }
}

impl<'de, T: FromStr> Deserialize<'de> for Num<T>
where
    T::Err: Display,
{
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        n.to_string().parse().map(Num).map_err(de::Error::custom)
    }
}

impl<T: Display> Display for Num<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub name: String,
    pub alexander: Vec<Num<BigInt>>,
    pub genus: Option<u32>,
    pub arc_index: Option<u32>,
    pub fibered: bool,
    pub seifert: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableListOut {
    pub knots: Vec<TableRow>,
}

/// Which cross-checks were applied to an entry that loaded successfully.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableCheckRow {
    pub name: String,
    pub seifert: bool,
    pub genus_bound: bool,
    pub fibered_genus: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableCheckOut {
    pub entries: usize,
    pub rows: Vec<TableCheckRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphereFlag {
    pub p: u64,
    pub sphere: bool,
}

/// `order` is 0 exactly when `infinite` is set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverRow {
    pub n: u64,
    pub order: Num<BigUint>,
    pub infinite: bool,
    pub zp_sphere: Vec<SphereFlag>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverOut {
    pub knot: String,
    pub primes: Vec<u64>,
    pub rows: Vec<CoverRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkpOut {
    pub knot: String,
    pub p: u64,
    pub set: Vec<Num<BigUint>>,
    pub admissible_limit: u64,
    pub admissible: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObstructOut {
    pub report: ObstructionReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FilterOut {
    pub knot: String,
    pub predecessors: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HfkOut {
    pub tight: Num<BigUint>,
    pub loose: Num<BigUint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DilatationOut {
    pub upper: f64,
    pub degenerate: bool,
    pub volume: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsOut {
    pub knot: String,
    pub genus: Option<u64>,
    pub delta: Option<u64>,
    pub gromov: Option<f64>,
    pub hfk: Option<HfkOut>,
    pub dilatation: Option<DilatationOut>,
}

/// Result of one command.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Output {
    TableList(TableListOut),
    TableCheck(TableCheckOut),
    Cover(CoverOut),
    Skp(SkpOut),
    Obstruct(ObstructOut),
    Filter(FilterOut),
    Bounds(BoundsOut),
}

impl Output {
    /// Parses JSON written by `--json`.
    ///
    /// Dispatches on the tag by hand: serde's buffered tagged-enum path
    /// cannot read floats when arbitrary-precision numbers are enabled.
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let mut value: Value = serde_json::from_str(text)?;
        let tag = value
            .as_object_mut()
            .and_then(|m| m.remove("command"))
            .ok_or_else(|| de::Error::missing_field("command"))?;
        let tag = tag
            .as_str()
            .ok_or_else(|| de::Error::custom("`command` must be a string"))?
            .to_owned();
        Ok(match tag.as_str() {
            "table-list" => Self::TableList(serde_json::from_value(value)?),
            "table-check" => Self::TableCheck(serde_json::from_value(value)?),
            "cover" => Self::Cover(serde_json::from_value(value)?),
            "skp" => Self::Skp(serde_json::from_value(value)?),
            "obstruct" => Self::Obstruct(serde_json::from_value(value)?),
            "filter" => Self::Filter(serde_json::from_value(value)?),
            "bounds" => Self::Bounds(serde_json::from_value(value)?),
            other => {
                return Err(de::Error::unknown_variant(
                    other,
                    &["table-list", "table-check", "cover", "skp", "obstruct", "filter", "bounds"],
                ))
            }
        })
    }

    /// Human-readable rendering; identical whether built from a live result
    /// or from its JSON.
    pub fn render_text(&self) -> String {
        match self {
            Self::TableList(o) => render_table_list(o),
            Self::TableCheck(o) => render_table_check(o),
            Self::Cover(o) => render_cover(o),
            Self::Skp(o) => render_skp(o),
            Self::Obstruct(o) => render_obstruct(&o.report),
            Self::Filter(o) => render_filter(o),
            Self::Bounds(o) => render_bounds(o),
        }
    }
}

fn opt<T: Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".into(), T::to_string)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: Display>(items: &[T]) -> String {
    items
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Left-aligned columns separated by two spaces, trailing spaces trimmed.
fn columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            s.push_str(cell);
            s.extend(std::iter::repeat_n(' ', w - cell.chars().count()));
        }
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn render_table_list(o: &TableListOut) -> String {
    let rows: Vec<Vec<String>> = o
        .knots
        .iter()
        .map(|k| {
            vec![
                k.name.clone(),
                format!("[{}]", join(&k.alexander)),
                opt(&k.genus),
                opt(&k.arc_index),
                yes_no(k.fibered).into(),
                yes_no(k.seifert).into(),
            ]
        })
        .collect();
    columns(&["name", "alexander", "genus", "arc_index", "fibered", "seifert"], &rows)
}

fn render_table_check(o: &TableCheckOut) -> String {
    let mark = |b: bool| if b { "ok" } else { "-" }.to_string();
    let rows: Vec<Vec<String>> = o
        .rows
        .iter()
        .map(|r| {
            vec![
                r.name.clone(),
                "ok".into(),
                mark(r.seifert),
                mark(r.genus_bound),
                mark(r.fibered_genus),
            ]
        })
        .collect();
    let mut s = columns(&["name", "alexander", "seifert", "genus_bound", "fibered_genus"], &rows);
    let _ = writeln!(s, "{} entries consistent", o.entries);
    s
}

fn render_cover(o: &CoverOut) -> String {
    let mut header = vec!["n".to_string(), "|H1|".to_string()];
    header.extend(o.primes.iter().map(|p| format!("Z/{p}-sphere")));
    let rows: Vec<Vec<String>> = o
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![
                r.n.to_string(),
                if r.infinite {
                    "∞".to_string()
                } else {
                    r.order.to_string()
                },
            ];
            row.extend(r.zp_sphere.iter().map(|f| yes_no(f.sphere).to_string()));
            row
        })
        .collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    format!("{}\n{}", o.knot, columns(&header, &rows))
}

fn render_skp(o: &SkpOut) -> String {
    format!(
        "S_{{{},{}}} = {{{}}}\nadmissible primes n <= {}: {}\n",
        o.knot,
        o.p,
        join(&o.set),
        o.admissible_limit,
        if o.admissible.is_empty() {
            "none".into()
        } else {
            join(&o.admissible)
        }
    )
}

fn render_obstruct(r: &ObstructionReport) -> String {
    let rows: Vec<Vec<String>> = r
        .checks
        .iter()
        .map(|c| vec![c.verdict.to_string(), c.id.clone(), c.detail.clone()])
        .collect();
    let overall = match r.overall {
        Verdict::Fail => "FAIL",
        _ => "PASS",
    };
    format!(
        "candidate {} <= {}\n{}overall: {} ({})\n",
        r.candidate.0,
        r.candidate.1,
        columns(&["verdict", "check", "detail"], &rows),
        overall,
        r.summary()
    )
}

fn render_filter(o: &FilterOut) -> String {
    let mut s = format!("not obstructed as predecessors of {}:\n", o.knot);
    for name in &o.predecessors {
        let _ = writeln!(s, "  {name}");
    }
    s
}

fn render_bounds(o: &BoundsOut) -> String {
    let mut rows = vec![
        vec!["genus".to_string(), opt(&o.genus)],
        vec!["arc index".to_string(), opt(&o.delta)],
        vec!["gromov norm bound".to_string(), opt(&o.gromov)],
    ];
    if let Some(h) = &o.hfk {
        rows.push(vec!["hfk dim bound".into(), h.tight.to_string()]);
        rows.push(vec!["hfk dim bound (loose)".into(), h.loose.to_string()]);
    }
    if let Some(d) = &o.dilatation {
        rows.push(vec!["dilatation upper".into(), d.upper.to_string()]);
        rows.push(vec!["degenerate samples".into(), yes_no(d.degenerate).into()]);
        rows.push(vec!["volume bound".into(), opt(&d.volume)]);
    }
    format!("{}\n{}", o.knot, columns(&["quantity", "value"], &rows))
}
