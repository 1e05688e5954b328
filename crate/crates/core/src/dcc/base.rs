//! The embedded `n = 4` covers with `u = 1234`.
//!
//! `data/printed_tables.txt` holds the three printed tables as printed.
//! Rows that fail validation are repaired by a search that keeps the
//! printed order wherever it can. Vertices `v` not handled by a table get
//! a cover from the brute-force oracle. The merged result is stored in
//! `data/base_covers.txt`, which [`generate`] reproduces byte for byte.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::permutation::Permutation;
use crate::topology::neighbors;
use crate::verify::{brute_force_dcc, validate_dcc, ValidationReport, Violation};

use super::{DccCover, DccError};

const PRINTED: &str = include_str!("../../data/printed_tables.txt");
const EMBEDDED: &str = include_str!("../../data/base_covers.txt");

const NV: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseSource {
    Table1,
    Table2,
    Table3,
    Oracle,
}

impl fmt::Display for BaseSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseSource::Table1 => "t1",
            BaseSource::Table2 => "t2",
            BaseSource::Table3 => "t3",
            BaseSource::Oracle => "oracle",
        })
    }
}

impl BaseSource {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "t1" => BaseSource::Table1,
            "t2" => BaseSource::Table2,
            "t3" => BaseSource::Table3,
            "oracle" => BaseSource::Oracle,
            _ => return None,
        })
    }

    fn table(t: u8) -> Option<Self> {
        Some(match t {
            1 => BaseSource::Table1,
            2 => BaseSource::Table2,
            3 => BaseSource::Table3,
            _ => return None,
        })
    }
}

fn u0() -> Permutation {
    Permutation::identity(4)
}

/// The `v` served by a printed table.
pub fn table_vertices(table: u8) -> Vec<Permutation> {
    let all = Permutation::all(4);
    match table {
        1 => vec!["2134".parse().unwrap()],
        2 => ["3124", "1324", "3214", "2314"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect(),
        3 => all.filter(|x| x.last() == 2).collect(),
        _ => Vec::new(),
    }
}

fn source_for(v: &Permutation) -> BaseSource {
    (1..=3)
        .find(|&t| table_vertices(t).contains(v))
        .and_then(BaseSource::table)
        .unwrap_or(BaseSource::Oracle)
}

/// One printed row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrintedRow {
    pub table: u8,
    pub ell: usize,
    pub c1: Vec<Permutation>,
    pub c2: Vec<Permutation>,
}

fn parse_cycle(s: &str) -> Result<Vec<Permutation>, String> {
    s.split_whitespace()
        .map(|t| t.parse::<Permutation>().map_err(|e| format!("{t}: {e}")))
        .collect()
}

pub fn parse_rows(text: &str) -> Result<Vec<PrintedRow>, DccError> {
    let mut rows = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |what: &str| DccError::BaseData(format!("line {}: {what}", k + 1));
        let parts: Vec<&str> = line.split('|').collect();
        let [head, c1, c2] = parts[..] else {
            return Err(bad("expected three '|'-separated fields"));
        };
        let mut head = head.split_whitespace();
        let table = head.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("table"))?;
        let ell = head.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("length"))?;
        rows.push(PrintedRow {
            table,
            ell,
            c1: parse_cycle(c1).map_err(|e| bad(&e))?,
            c2: parse_cycle(c2).map_err(|e| bad(&e))?,
        });
    }
    if rows.is_empty() {
        return Err(DccError::BaseData("no table rows".into()));
    }
    Ok(rows)
}

/// The printed rows, unmodified.
pub fn printed_rows() -> Result<Vec<PrintedRow>, DccError> {
    parse_rows(PRINTED)
}

/// Validates a cover against every `v` of its table, merging violations.
fn row_report(table: u8, ell: usize, c1: &[Permutation], c2: &[Permutation]) -> ValidationReport {
    let cover = DccCover::from_pair(c1.to_vec(), c2.to_vec());
    let mut violations: Vec<Violation> = Vec::new();
    for v in table_vertices(table) {
        for x in validate_dcc(4, &cover, &u0(), &v, ell).violations {
            if !violations.contains(&x) {
                violations.push(x);
            }
        }
    }
    ValidationReport {
        ok: violations.is_empty(),
        violations,
    }
}

// ---- repair search -------------------------------------------------------

struct Graph {
    verts: Vec<Permutation>,
    nbrs: Vec<Vec<usize>>,
}

fn graph() -> &'static Graph {
    static G: OnceLock<Graph> = OnceLock::new();
    G.get_or_init(|| {
        let verts: Vec<Permutation> = Permutation::all(4).collect();
        let nbrs = verts
            .iter()
            .map(|x| neighbors(x).into_iter().map(|(y, _)| y.rank() as usize).collect())
            .collect();
        Graph { verts, nbrs }
    })
}

fn idx(x: &Permutation) -> usize {
    x.rank() as usize
}

/// Successors of `cur`: the guide's successor first, then neighbor order.
fn guided(g: &Graph, cur: usize, guide: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(5);
    let k = guide.len();
    for (j, &x) in guide.iter().enumerate() {
        if x == cur && k > 0 {
            let nx = guide[(j + 1) % k];
            if g.nbrs[cur].contains(&nx) && !out.contains(&nx) {
                out.push(nx);
            }
        }
    }
    for &y in &g.nbrs[cur] {
        if !out.contains(&y) {
            out.push(y);
        }
    }
    out
}

/// Hamiltonian cycle of the vertex set `set`, preferring the guide's order.
fn ham_cycle(set: u32, guide: &[usize]) -> Option<Vec<usize>> {
    let g = graph();
    if set.count_ones() < 3 {
        return None;
    }
    let start = guide
        .iter()
        .copied()
        .find(|x| set & 1 << x != 0)
        .unwrap_or(set.trailing_zeros() as usize);
    let mut path = vec![start];
    fn rec(g: &Graph, set: u32, seen: u32, path: &mut Vec<usize>, guide: &[usize]) -> bool {
        let cur = *path.last().unwrap();
        if seen == set {
            return g.nbrs[cur].contains(&path[0]);
        }
        for y in guided(g, cur, guide) {
            if set & 1 << y == 0 || seen & 1 << y != 0 {
                continue;
            }
            let seen2 = seen | 1 << y;
            let open = set & !seen2 | 1 << y | 1 << path[0];
            let mut left = set & !seen2;
            let mut dead = false;
            while left != 0 {
                let x = left.trailing_zeros() as usize;
                left &= left - 1;
                if g.nbrs[x].iter().filter(|&&z| open & 1 << z != 0).count() < 2 {
                    dead = true;
                    break;
                }
            }
            if dead {
                continue;
            }
            path.push(y);
            if rec(g, set, seen2, path, guide) {
                return true;
            }
            path.pop();
        }
        false
    }
    rec(g, set, 1 << start, &mut path, guide).then_some(path)
}

/// An `ell`-cycle through `u` avoiding `avoid` whose complement has a
/// Hamiltonian cycle, preferring the guide's order.
fn ell_cycle(ell: usize, avoid: u32, guide: &[usize]) -> Option<Vec<usize>> {
    let g = graph();
    let full: u32 = (1 << NV) - 1;
    let start = idx(&u0());
    let mut path = vec![start];
    fn rec(g: &Graph, ell: usize, avoid: u32, full: u32, used: u32, path: &mut Vec<usize>, guide: &[usize]) -> bool {
        let cur = *path.last().unwrap();
        if path.len() == ell {
            return g.nbrs[cur].contains(&path[0]) && ham_cycle(full & !used, &[]).is_some();
        }
        for y in guided(g, cur, guide) {
            if used & 1 << y != 0 || avoid & 1 << y != 0 {
                continue;
            }
            path.push(y);
            if rec(g, ell, avoid, full, used | 1 << y, path, guide) {
                return true;
            }
            path.pop();
        }
        false
    }
    rec(g, ell, avoid, full, 1 << start, &mut path, guide).then_some(path)
}

fn is_cycle(c: &[usize]) -> bool {
    let g = graph();
    let k = c.len();
    let mut seen = 0u32;
    for j in 0..k {
        if seen & 1 << c[j] != 0 || !g.nbrs[c[j]].contains(&c[(j + 1) % k]) {
            return false;
        }
        seen |= 1 << c[j];
    }
    k >= 3
}

fn mask(c: &[usize]) -> u32 {
    c.iter().fold(0, |m, x| m | 1 << x)
}

/// Repairs a printed row. Returns the printed cycles untouched when they
/// already validate.
pub fn repair_row(row: &PrintedRow) -> Option<(Vec<Permutation>, Vec<Permutation>)> {
    let g = graph();
    let full: u32 = (1 << NV) - 1;
    let protect = mask(&table_vertices(row.table).iter().map(idx).collect::<Vec<_>>());
    let p1: Vec<usize> = row.c1.iter().filter(|x| x.n() == 4).map(idx).collect();
    let p2: Vec<usize> = row.c2.iter().filter(|x| x.n() == 4).map(idx).collect();
    let start = idx(&u0());
    let c1_ok = p1.len() == row.ell
        && p1.first() == Some(&start)
        && is_cycle(&p1)
        && mask(&p1) & protect == 0
        && ham_cycle(full & !mask(&p1), &[]).is_some();
    let c1 = if c1_ok { p1 } else { ell_cycle(row.ell, protect, &p1)? };
    let rest = full & !mask(&c1);
    let c2 = if is_cycle(&p2) && mask(&p2) == rest && p2.len() == rest.count_ones() as usize {
        p2
    } else {
        ham_cycle(rest, &p2)?
    };
    let back = |c: Vec<usize>| c.into_iter().map(|k| g.verts[k]).collect();
    Some((back(c1), back(c2)))
}

/// Edit distance between two vertex sequences.
fn edit_distance(a: &[Permutation], b: &[Permutation]) -> usize {
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    for (i, x) in a.iter().enumerate() {
        let mut cur = vec![i + 1; b.len() + 1];
        for (j, y) in b.iter().enumerate() {
            cur[j + 1] = (prev[j] + usize::from(x != y)).min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        prev = cur;
    }
    prev[b.len()]
}

/// Validation status of one printed row.
#[derive(Debug, Clone)]
pub struct RowCheck {
    pub table: u8,
    pub ell: usize,
    pub printed: ValidationReport,
    pub repaired: Option<(Vec<Permutation>, Vec<Permutation>)>,
    pub repaired_report: Option<ValidationReport>,
    /// Edits to `c1` and `c2` relative to the printed sequences.
    pub edits: (usize, usize),
}

impl RowCheck {
    pub fn passes_as_printed(&self) -> bool {
        self.printed.ok
    }

    pub fn repaired_ok(&self) -> bool {
        self.repaired_report.as_ref().is_some_and(|r| r.ok)
    }
}

impl fmt::Display for RowCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "table {} ell={}: ", self.table, self.ell)?;
        if self.printed.ok {
            return f.write_str("pass (as printed)");
        }
        let first: Vec<String> = self
            .printed
            .violations
            .iter()
            .take(3)
            .map(|v| format!("{}({})", v.code, v.detail))
            .collect();
        write!(f, "flagged [{}]", first.join(", "))?;
        if self.printed.violations.len() > 3 {
            write!(f, " +{} more", self.printed.violations.len() - 3)?;
        }
        match (&self.repaired_report, self.repaired_ok()) {
            (Some(_), true) => write!(f, "; repaired: pass (edits c1={}, c2={})", self.edits.0, self.edits.1),
            (Some(r), false) => write!(f, "; repaired: FAIL {r}"),
            (None, _) => f.write_str("; repair: none found"),
        }
    }
}

/// Validates and repairs every printed row.
pub fn check_tables() -> Result<Vec<RowCheck>, DccError> {
    check_rows(&printed_rows()?)
}

pub fn check_rows(rows: &[PrintedRow]) -> Result<Vec<RowCheck>, DccError> {
    if rows.is_empty() {
        return Err(DccError::BaseData("no table rows".into()));
    }
    Ok(rows
        .iter()
        .map(|row| {
            let printed = row_report(row.table, row.ell, &row.c1, &row.c2);
            let repaired = repair_row(row);
            let repaired_report = repaired.as_ref().map(|(a, b)| row_report(row.table, row.ell, a, b));
            let edits = repaired
                .as_ref()
                .map(|(a, b)| (edit_distance(&row.c1, a), edit_distance(&row.c2, b)))
                .unwrap_or_default();
            RowCheck {
                table: row.table,
                ell: row.ell,
                printed,
                repaired,
                repaired_report,
                edits,
            }
        })
        .collect())
}

fn join(c: &[Permutation]) -> String {
    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Rebuilds the contents of `data/base_covers.txt`.
pub fn generate() -> Result<String, DccError> {
    let checks = check_tables()?;
    let mut by_table: HashMap<(u8, usize), (Vec<Permutation>, Vec<Permutation>)> = HashMap::new();
    for c in checks {
        let pair = c
            .repaired
            .filter(|_| c.repaired_report.as_ref().is_some_and(|r| r.ok))
            .ok_or_else(|| DccError::BaseData(format!("table {} ell={} has no valid repair", c.table, c.ell)))?;
        by_table.insert((c.table, c.ell), pair);
    }
    let mut out = String::from("# v ell source | c1 | c2\n");
    for v in Permutation::all(4).skip(1) {
        let source = source_for(&v);
        for ell in 3..=12 {
            let (c1, c2) = match source {
                BaseSource::Oracle => {
                    let cover = brute_force_dcc(&u0(), &v, ell)
                        .map_err(|e| DccError::BaseData(e.to_string()))?
                        .ok_or_else(|| DccError::BaseData(format!("oracle found no cover for {v} ell={ell}")))?;
                    (cover.c1.into_vertices(), cover.c2.into_vertices())
                }
                s => {
                    let t = match s {
                        BaseSource::Table1 => 1,
                        BaseSource::Table2 => 2,
                        _ => 3,
                    };
                    by_table
                        .get(&(t, ell))
                        .cloned()
                        .ok_or_else(|| DccError::BaseData(format!("table {t} lacks ell={ell}")))?
                }
            };
            out.push_str(&format!("{v} {ell} {source} | {} | {}\n", join(&c1), join(&c2)));
        }
    }
    Ok(out)
}

type Store = HashMap<(Permutation, usize), (DccCover, BaseSource)>;

fn load(text: &str) -> Result<Store, DccError> {
    let mut store = HashMap::new();
    for (k, line) in text.lines().enumerate() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let bad = |what: &str| DccError::BaseData(format!("base_covers line {}: {what}", k + 1));
        let parts: Vec<&str> = line.split('|').collect();
        let [head, c1, c2] = parts[..] else {
            return Err(bad("expected three fields"));
        };
        let head: Vec<&str> = head.split_whitespace().collect();
        let [v, ell, source] = head[..] else {
            return Err(bad("header"));
        };
        let v: Permutation = v.parse().map_err(|_| bad("vertex"))?;
        let ell: usize = ell.parse().map_err(|_| bad("length"))?;
        let source = BaseSource::parse(source).ok_or_else(|| bad("source"))?;
        let cover = DccCover::from_pair(
            parse_cycle(c1).map_err(|e| bad(&e))?,
            parse_cycle(c2).map_err(|e| bad(&e))?,
        );
        let report = validate_dcc(4, &cover, &u0(), &v, ell);
        if !report.ok {
            return Err(bad(&report.to_string()));
        }
        store.insert((v, ell), (cover, source));
    }
    if store.len() != 230 {
        return Err(DccError::BaseData(format!("{} covers, expected 230", store.len())));
    }
    Ok(store)
}

fn store() -> Result<&'static Store, DccError> {
    static STORE: OnceLock<Result<Store, DccError>> = OnceLock::new();
    STORE.get_or_init(|| load(EMBEDDED)).as_ref().map_err(Clone::clone)
}

pub(crate) fn lookup_canonical(v: &Permutation, ell: usize) -> Result<(DccCover, BaseSource), DccError> {
    if !(3..=12).contains(&ell) {
        return Err(DccError::BadLength { ell, max: 12 });
    }
    if *v == u0() {
        return Err(DccError::SameVertex);
    }
    store()?
        .get(&(*v, ell))
        .cloned()
        .ok_or_else(|| DccError::BaseData(format!("missing cover for {v} ell={ell}")))
}

/// The embedded cover for `(v, ell)`; `u` must be `1234`.
pub fn base_lookup(u: &Permutation, v: &Permutation, ell: usize) -> Result<DccCover, DccError> {
    if u.n() != 4 {
        return Err(DccError::NotBaseDimension(u.n()));
    }
    if v.n() != 4 {
        return Err(DccError::DimensionMismatch(*v, 4));
    }
    if *u != u0() {
        return Err(DccError::NotCanonical(*u));
    }
    lookup_canonical(v, ell).map(|(c, _)| c)
}

/// The source of the embedded cover for `v`.
pub fn base_source(v: &Permutation) -> BaseSource {
    source_for(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn embedded_data_is_current() {
        assert_eq!(generate().unwrap(), EMBEDDED);
    }

    #[test]
    fn lookup_examples() {
        let c = base_lookup(&p("1234"), &p("3124"), 5).unwrap();
        assert_eq!(
            c.c1.vertices(),
            &[p("1234"), p("4132"), p("2431"), p("4231"), p("2134")]
        );
        assert_eq!(c.c2.len(), 19);
        let c = base_lookup(&p("1234"), &p("4132"), 3).unwrap();
        assert_eq!(c.c1.vertices(), &[p("1234"), p("3124"), p("2314")]);
        assert!(table_vertices(3).iter().all(|x| c.c2.contains(x)));
        let c = base_lookup(&p("1234"), &p("4321"), 7).unwrap();
        assert_eq!((c.c1.len(), c.c2.len()), (7, 17));
        assert_eq!(base_source(&p("4321")), BaseSource::Oracle);
        assert_eq!(
            base_lookup(&p("12345"), &p("2134"), 3),
            Err(DccError::NotBaseDimension(5))
        );
        assert_eq!(
            base_lookup(&p("1234"), &p("2134"), 13),
            Err(DccError::BadLength { ell: 13, max: 12 })
        );
    }

    #[test]
    fn printed_duplicates_are_flagged() {
        let checks = check_tables().unwrap();
        let t13 = checks.iter().find(|c| c.table == 1 && c.ell == 3).unwrap();
        assert!(!t13.passes_as_printed());
        assert!(t13.repaired_ok());
        assert!(checks.iter().all(|c| c.repaired_ok()));
        assert!(check_rows(&[]).is_err());
    }
}

#[cfg(test)]
mod regen {
    /// `cargo test -p splitstar regenerate_base_covers -- --ignored`
    #[test]
    #[ignore]
    fn regenerate_base_covers() {
        let text = super::generate().unwrap();
        std::fs::write(concat!(env!("CARGO_MANIFEST_DIR"), "/data/base_covers.txt"), text).unwrap();
    }
}
