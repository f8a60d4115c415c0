//! The assembled catalog: every family and parameter value in scope is
//! enumerated, each polytope gets its invariants, and records are named
//! through the bundled identifier map. Also verification against expected
//! tables and CSV/JSON emission.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{canonical_form, enumerate, CanonicalPolytope, EnumConfig};
use crate::error::{Error, Result};
use crate::geometry::convex_hull;
use crate::geometry::rat::parse_vec_list;
use crate::invariants::{compute, KVerdict, Stability};
use crate::registry::{rank0_entries, registry, FamilySpec, Params, SymmetryGroup};
use crate::spherical::SpaceType;

pub const SHIPPED_IDENTIFIER_MAP: &str = include_str!("../data/identifier_map.json");
pub const EXPECTED_DIM2_CSV: &str = include_str!("../data/expected_dim2.csv");
pub const EXPECTED_DIM3_CSV: &str = include_str!("../data/expected_dim3.csv");

/// Family id used for the rank-0 (projective homogeneous) rows.
pub const RANK0_FAMILY: &str = "rank0";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingRecord {
    pub identifier: String,
    pub family: String,
    pub params: Params,
    /// `None` exactly for rank 0, where there is no polytope.
    pub polytope: Option<CanonicalPolytope>,
    pub pic: u32,
    pub degree: u64,
    pub fano_index: u64,
    pub k_verdict: KVerdict,
    pub dim: usize,
    pub rank: usize,
    pub group: String,
    pub space_type: String,
}

impl EmbeddingRecord {
    fn sort_key(&self) -> (usize, usize, (u8, u64, String)) {
        (self.dim, self.rank, identifier_key(&self.identifier))
    }
}

/// Orders `d-r-n` numerically, then synthetic `computed-d-r-k` after them.
fn identifier_key(id: &str) -> (u8, u64, String) {
    let (tag, rest) = match id.strip_prefix("computed-") {
        Some(r) => (1, r),
        None => (0, id),
    };
    match rest.rsplit('-').next().and_then(|n| n.parse().ok()) {
        Some(n) => (tag, n, id.to_string()),
        None => (2, 0, id.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub records: Vec<EmbeddingRecord>,
    /// `counts[rank][dim - 1]`.
    pub counts: [[usize; 4]; 3],
    /// Records that received a synthetic identifier, and map entries that
    /// matched nothing.
    pub warnings: Vec<String>,
}

/// One row of the bundled identifier map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEntry {
    pub id: String,
    pub family: String,
    pub params: Params,
    /// Vertex literal, `"(a,b);(c,d);..."` or `"a;b"`.
    pub vertices: String,
}

pub fn shipped_identifier_map() -> Result<Vec<MapEntry>> {
    Ok(serde_json::from_str(SHIPPED_IDENTIFIER_MAP)?)
}

type RecordKey = (String, Params, CanonicalPolytope);

struct Unnamed {
    family: String,
    params: Params,
    polytope: CanonicalPolytope,
    pic: u32,
    degree: u64,
    fano_index: u64,
    k_verdict: KVerdict,
    dim: usize,
    rank: usize,
    group: String,
    space_type: String,
}

fn run_job(spec: &FamilySpec, params: &Params, cfg: &EnumConfig) -> Result<Vec<Unnamed>> {
    let data = spec.build(params)?;
    let group = SymmetryGroup::of(&data);
    enumerate(&data, &group, cfg)?
        .into_iter()
        .map(|c| {
            let inv = compute(&data, &c.polytope)?;
            Ok(Unnamed {
                family: spec.id.to_string(),
                params: params.clone(),
                polytope: c,
                pic: inv.pic,
                degree: inv.degree,
                fano_index: inv.fano_index,
                k_verdict: inv.k_verdict,
                dim: spec.dim,
                rank: spec.rank,
                group: data.group.clone(),
                space_type: data.space_type.to_string(),
            })
        })
        .collect()
}

/// Canonicalizes every in-scope map entry under its family group.
fn resolve_map(map: &[MapEntry], in_scope: &dyn Fn(&str, &Params) -> bool) -> Result<BTreeMap<RecordKey, String>> {
    let mut seen_ids = BTreeSet::new();
    let mut out: BTreeMap<RecordKey, String> = BTreeMap::new();
    for e in map {
        if !seen_ids.insert(e.id.clone()) {
            return Err(Error::MappingConflict(format!("identifier {} appears twice in the map", e.id)));
        }
        if !in_scope(&e.family, &e.params) {
            continue;
        }
        let spec = crate::registry::find_spec(&e.family, &e.params)?;
        let data = spec.build(&e.params)?;
        let group = SymmetryGroup::of(&data);
        let verts = parse_vec_list(&e.vertices)?;
        let p = convex_hull(&verts, data.rank)?;
        let c = canonical_form(&group, &p)?;
        if let Some(prev) = out.insert((e.family.clone(), e.params.clone(), c), e.id.clone()) {
            return Err(Error::MappingConflict(format!("{} and {} name the same embedding", prev, e.id)));
        }
    }
    Ok(out)
}

/// Builds the catalog for the given dimensions and ranks with the shipped
/// identifier map. `jobs` bounds the worker pool (`None` uses every core).
pub fn build_catalog(dims: &[usize], ranks: &[usize], cfg: &EnumConfig, jobs: Option<usize>) -> Result<Catalog> {
    build_catalog_with_map(dims, ranks, cfg, jobs, &shipped_identifier_map()?)
}

pub fn build_catalog_with_map(
    dims: &[usize],
    ranks: &[usize],
    cfg: &EnumConfig,
    jobs: Option<usize>,
    map: &[MapEntry],
) -> Result<Catalog> {
    if let Some(d) = dims.iter().find(|d| !(1..=4).contains(*d)) {
        return Err(Error::DegenerateInput(format!("dimension {d} is outside 1..4")));
    }
    if let Some(r) = ranks.iter().find(|r| **r > 2) {
        return Err(Error::DegenerateInput(format!("rank {r} is outside 0..2")));
    }
    let work: Vec<(&FamilySpec, &Params)> = registry()
        .iter()
        .filter(|s| dims.contains(&s.dim) && ranks.contains(&s.rank))
        .flat_map(|s| s.param_bound.iter().map(move |p| (s, p)))
        .collect();

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        pool = pool.num_threads(n.max(1));
    }
    let pool = pool.build().map_err(|e| Error::DegenerateInput(format!("worker pool: {e}")))?;
    let batches: Vec<Vec<Unnamed>> =
        pool.install(|| work.par_iter().map(|(s, p)| run_job(s, p, cfg)).collect::<Result<Vec<_>>>())?;
    let mut found: Vec<Unnamed> = batches.into_iter().flatten().collect();
    found.sort_by(|a, b| {
        (a.dim, a.rank, &a.family, &a.params, &a.polytope).cmp(&(b.dim, b.rank, &b.family, &b.params, &b.polytope))
    });

    let in_scope = |family: &str, params: &Params| work.iter().any(|(s, p)| s.id == family && *p == params);
    let mut names = resolve_map(map, &in_scope)?;

    let mut warnings = Vec::new();
    let mut records = Vec::new();
    let mut synthetic: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for u in found {
        let key = (u.family.clone(), u.params.clone(), u.polytope.clone());
        let identifier = match names.remove(&key) {
            Some(id) => id,
            None => {
                let k = synthetic.entry((u.dim, u.rank)).or_insert(0);
                *k += 1;
                let id = format!("computed-{}-{}-{}", u.dim, u.rank, k);
                warnings.push(format!(
                    "{id}: no mapped identifier for {} [{}] {}",
                    u.family,
                    u.params,
                    u.polytope.polytope.to_literal()
                ));
                id
            }
        };
        records.push(EmbeddingRecord {
            identifier,
            family: u.family,
            params: u.params,
            polytope: Some(u.polytope),
            pic: u.pic,
            degree: u.degree,
            fano_index: u.fano_index,
            k_verdict: u.k_verdict,
            dim: u.dim,
            rank: u.rank,
            group: u.group,
            space_type: u.space_type,
        });
    }
    for ((family, params, c), id) in names {
        warnings.push(format!("map entry {id} ({family} [{params}] {}) matched no record", c.polytope.to_literal()));
    }

    if ranks.contains(&0) {
        let mut per_dim: BTreeMap<usize, usize> = BTreeMap::new();
        for e in rank0_entries().into_iter().filter(|e| dims.contains(&e.dim)) {
            let n = per_dim.entry(e.dim).or_insert(0);
            *n += 1;
            records.push(EmbeddingRecord {
                identifier: format!("{}-0-{}", e.dim, n),
                family: RANK0_FAMILY.to_string(),
                params: Params::default(),
                polytope: None,
                pic: e.pic,
                degree: e.degree,
                fano_index: e.fano_index as u64,
                // flag varieties are Kähler-Einstein; the barycenter is the origin of a rank-0 lattice
                k_verdict: KVerdict { value: Stability::Stable, barycenter: Vec::new() },
                dim: e.dim,
                rank: 0,
                group: e.group.to_string(),
                space_type: SpaceType::Rank0.to_string(),
            });
        }
    }

    records.sort_by_key(|r| r.sort_key());
    let counts = count_grid(&records);
    Ok(Catalog { records, counts, warnings })
}

fn count_grid(records: &[EmbeddingRecord]) -> [[usize; 4]; 3] {
    let mut g = [[0; 4]; 3];
    for r in records {
        g[r.rank][r.dim - 1] += 1;
    }
    g
}

/// The counts grid, its per-dimension column sums and the grand total.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountsTable {
    pub grid: [[usize; 4]; 3],
    pub totals: [usize; 4],
    pub total: usize,
}

pub fn counts_table(catalog: &Catalog) -> CountsTable {
    let grid = catalog.counts;
    let totals = std::array::from_fn(|d| grid.iter().map(|row| row[d]).sum());
    let total = grid.iter().flatten().sum();
    CountsTable { grid, totals, total }
}

impl std::fmt::Display for CountsTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{:<10}{:>6}{:>6}{:>6}{:>6}", "", "dim 1", "dim 2", "dim 3", "dim 4")?;
        for (r, row) in self.grid.iter().enumerate() {
            writeln!(f, "{:<10}{:>6}{:>6}{:>6}{:>6}", format!("rank = {r}"), row[0], row[1], row[2], row[3])?;
        }
        let t = self.totals;
        writeln!(f, "{:<10}{:>6}{:>6}{:>6}{:>6}", "rank <= 2", t[0], t[1], t[2], t[3])?;
        write!(f, "total {}", self.total)
    }
}

/// Number of distinct `(pic, degree)` pairs among records of one dimension.
pub fn distinct_pic_degree(catalog: &Catalog, dim: usize) -> usize {
    catalog.records.iter().filter(|r| r.dim == dim).map(|r| (r.pic, r.degree)).collect::<BTreeSet<_>>().len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub identifier: String,
    pub field: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Deserialize)]
struct ExpectedRow {
    identifier: String,
    pic: u32,
    degree: u64,
    ke: String,
}

pub fn verify(catalog: &Catalog, expected_csv: &Path) -> Result<VerifyReport> {
    let text = std::fs::read_to_string(expected_csv)?;
    verify_str(catalog, &text)
}

/// Compares pic, degree and KE for every row of an expected table. A row
/// whose identifier is absent from the catalog is reported as a mismatch.
pub fn verify_str(catalog: &Catalog, expected_csv: &str) -> Result<VerifyReport> {
    let mut rdr = csv::Reader::from_reader(expected_csv.as_bytes());
    let headers = rdr.headers().map_err(|e| Error::MalformedExpectedFile(e.to_string()))?.clone();
    for col in ["identifier", "pic", "degree", "ke"] {
        if !headers.iter().any(|h| h == col) {
            return Err(Error::MalformedExpectedFile(format!("missing column `{col}`")));
        }
    }
    let by_id: BTreeMap<&str, &EmbeddingRecord> = catalog.records.iter().map(|r| (r.identifier.as_str(), r)).collect();
    let mut report = VerifyReport::default();
    for (line, row) in rdr.deserialize::<ExpectedRow>().enumerate() {
        let row = row.map_err(|e| Error::MalformedExpectedFile(format!("row {}: {e}", line + 1)))?;
        let ke = match row.ke.as_str() {
            "True" => true,
            "False" => false,
            other => {
                return Err(Error::MalformedExpectedFile(format!(
                    "row {}: ke must be True or False, got `{other}`",
                    line + 1
                )))
            }
        };
        report.checked += 1;
        let mut miss = |field: &str, expected: String, got: String| {
            report.mismatches.push(Mismatch { identifier: row.identifier.clone(), field: field.into(), expected, got })
        };
        let Some(rec) = by_id.get(row.identifier.as_str()) else {
            miss("identifier", row.identifier.clone(), "absent".into());
            continue;
        };
        if rec.pic != row.pic {
            miss("pic", row.pic.to_string(), rec.pic.to_string());
        }
        if rec.degree != row.degree {
            miss("degree", row.degree.to_string(), rec.degree.to_string());
        }
        if rec.k_verdict.is_ke() != ke {
            miss("ke", ke_str(ke).into(), format!("{} ({:?})", ke_str(rec.k_verdict.is_ke()), rec.k_verdict.value));
        }
    }
    Ok(report)
}

fn ke_str(b: bool) -> &'static str {
    if b {
        "True"
    } else {
        "False"
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!("unknown format `{s}`, expected csv or json"))),
        }
    }
}

pub const CSV_COLUMNS: [&str; 11] =
    ["identifier", "dim", "rank", "family", "params", "pic", "degree", "fano_index", "ke", "group", "type"];

pub fn emit<W: Write>(catalog: &Catalog, format: Format, mut out: W) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, catalog)?;
            out.write_all(b"\n")?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_COLUMNS)?;
            for r in &catalog.records {
                w.write_record([
                    r.identifier.clone(),
                    r.dim.to_string(),
                    r.rank.to_string(),
                    r.family.clone(),
                    r.params.to_string(),
                    r.pic.to_string(),
                    r.degree.to_string(),
                    r.fano_index.to_string(),
                    ke_str(r.k_verdict.is_ke()).to_string(),
                    r.group.clone(),
                    r.space_type.clone(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn emit_to_path(catalog: &Catalog, format: Format, path: &Path) -> Result<()> {
    let f = std::io::BufWriter::new(std::fs::File::create(path)?);
    emit(catalog, format, f)
}

pub fn emit_string(catalog: &Catalog, format: Format) -> Result<String> {
    let mut buf = Vec::new();
    emit(catalog, format, &mut buf)?;
    Ok(String::from_utf8(buf).expect("emitted text is UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Catalog {
        build_catalog(&[1, 2], &[0, 1, 2], &EnumConfig::default(), Some(2)).unwrap()
    }

    #[test]
    fn identifiers_sort_numerically() {
        let mut ids = vec!["3-2-10", "computed-4-2-1", "3-2-9", "3-2-44"];
        ids.sort_by_key(|s| identifier_key(s));
        assert_eq!(ids, vec!["3-2-9", "3-2-10", "3-2-44", "computed-4-2-1"]);
    }

    #[test]
    fn surfaces_and_curves() {
        let c = small();
        assert_eq!(c.counts[0][..2], [1, 2]);
        assert_eq!(c.counts[1][..2], [1, 5]);
        assert_eq!(c.counts[2][..2], [0, 5]);
        assert!(c.warnings.is_empty(), "{:?}", c.warnings);
        let t = counts_table(&c);
        assert_eq!(t.totals[..2], [2, 12]);
        let csv = emit_string(
            &Catalog { records: c.records.iter().filter(|r| r.dim == 2 && r.rank > 0).cloned().collect(), ..c.clone() },
            Format::Csv,
        )
        .unwrap();
        assert_eq!(csv.lines().count(), 11);
        assert_eq!(csv.lines().next().unwrap(), CSV_COLUMNS.join(","));
    }

    #[test]
    fn dim2_expectations_and_fault_injection() {
        let c = small();
        let r = verify_str(&c, EXPECTED_DIM2_CSV).unwrap();
        assert_eq!(r.checked, 10);
        assert!(r.ok(), "{:?}", r.mismatches);
        let mutated = EXPECTED_DIM2_CSV.replace("2-1-2,1,9,True", "2-1-2,1,10,True");
        let r = verify_str(&c, &mutated).unwrap();
        assert_eq!(r.mismatches.len(), 1);
        assert_eq!(r.mismatches[0].identifier, "2-1-2");
        assert_eq!(r.mismatches[0].field, "degree");
    }

    #[test]
    fn malformed_expectations() {
        let c = Catalog { records: vec![], counts: [[0; 4]; 3], warnings: vec![] };
        assert!(matches!(verify_str(&c, "identifier,pic\n1-1-1,1\n"), Err(Error::MalformedExpectedFile(_))));
        assert!(matches!(
            verify_str(&c, "identifier,pic,degree,ke\n1-1-1,1,2,maybe\n"),
            Err(Error::MalformedExpectedFile(_))
        ));
        assert!(matches!(
            verify_str(&c, "identifier,pic,degree,ke\n1-1-1,x,2,True\n"),
            Err(Error::MalformedExpectedFile(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let c = small();
        let s = emit_string(&c, Format::Json).unwrap();
        let back: Catalog = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn duplicate_map_names_conflict() {
        let map = shipped_identifier_map().unwrap();
        let mut dup: Vec<MapEntry> = map.iter().filter(|e| e.id.starts_with("2-2-")).cloned().collect();
        let mut twin = dup[0].clone();
        twin.id = "2-2-99".into();
        dup.push(twin);
        let r = build_catalog_with_map(&[2], &[2], &EnumConfig::default(), Some(1), &dup);
        assert!(matches!(r, Err(Error::MappingConflict(_))));
    }

    #[test]
    fn unmatched_records_get_synthetic_names() {
        let map = shipped_identifier_map().unwrap();
        let partial: Vec<MapEntry> = map.into_iter().filter(|e| e.id != "2-2-3").collect();
        let c = build_catalog_with_map(&[2], &[2], &EnumConfig::default(), Some(1), &partial).unwrap();
        let ids: Vec<&str> = c.records.iter().map(|r| r.identifier.as_str()).collect();
        assert_eq!(ids, vec!["2-2-1", "2-2-2", "2-2-4", "2-2-5", "computed-2-2-1"]);
        assert_eq!(c.warnings.len(), 1);
    }
}
