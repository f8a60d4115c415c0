//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints one PASS/FAIL line in plain `cargo test` output.

mod common;

use std::time::Instant;

use num_traits::Zero;
use proptest::test_runner::{Config, TestRunner};
use sphfano::catalog::{build_catalog, counts_table, verify_str, Catalog, EXPECTED_DIM2_CSV, EXPECTED_DIM3_CSV};
use sphfano::enumerate::{brute_force_raw, enumerate, enumerate_family, enumerate_raw, EnumConfig};
use sphfano::invariants::{compute, picard_presentation};
use sphfano::registry::{build, Params, SymmetryGroup};

struct Outcome {
    failures: usize,
}

impl Outcome {
    fn report(&mut self, id: &str, what: &str, ok: bool, detail: String) {
        println!("{} [{id}] {what}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failures += 1;
        }
    }
}

fn count(id: &str, params: &str) -> usize {
    enumerate_family(id, &Params::parse(params).unwrap(), &EnumConfig::default()).unwrap().len()
}

fn criterion_1(o: &mut Outcome, c: &Catalog, secs: f64) {
    let t = counts_table(c);
    let ok =
        t.grid == [[1, 2, 6, 9], [1, 5, 13, 57], [0, 5, 44, 194]] && t.totals == [2, 12, 63, 260] && t.total == 337;
    o.report(
        "1",
        "global counts (exact)",
        ok,
        format!(
            "rank0 {:?} rank1 {:?} rank2 {:?} totals {:?} grand {} in {secs:.1}s",
            t.grid[0], t.grid[1], t.grid[2], t.totals, t.total
        ),
    );
}

fn criterion_table(
    o: &mut Outcome,
    c: &Catalog,
    id: &str,
    name: &str,
    csv: &str,
    rows: usize,
    anchors: &[(&str, u32, u64, bool)],
) {
    let r = verify_str(c, csv).unwrap();
    let mut bad: Vec<String> =
        r.mismatches.iter().map(|m| format!("{} {} {}!={}", m.identifier, m.field, m.got, m.expected)).collect();
    for (ident, pic, degree, ke) in anchors {
        match c.records.iter().find(|x| x.identifier == *ident) {
            Some(x) if x.pic == *pic && x.degree == *degree && x.k_verdict.is_ke() == *ke => {}
            _ => bad.push(format!("anchor {ident}")),
        }
    }
    let ok = r.checked == rows && bad.is_empty();
    o.report(id, name, ok, format!("{} rows checked, {} mismatches {:?}", r.checked, bad.len(), bad));
}

fn criterion_4(o: &mut Outcome, c: &Catalog) {
    let d4: Vec<_> = c.records.iter().filter(|r| r.dim == 4 && r.rank > 0).collect();
    let r1 = d4.iter().filter(|r| r.rank == 1).count();
    let r2 = d4.iter().filter(|r| r.rank == 2).count();
    let all4: Vec<_> = c.records.iter().filter(|r| r.dim == 4).collect();
    let stable = all4.iter().filter(|r| r.k_verdict.is_ke()).count();
    let other = all4.len() - stable;
    let ok = r1 == 57 && r2 == 194 && stable >= 24 && other >= 93;
    o.report(
        "4",
        "dim-4 aggregates (exact counts, lower bounds 24/93)",
        ok,
        format!("rank1 {r1} rank2 {r2} stable {stable} (>=24) non-stable {other} (>=93)"),
    );
}

fn criterion_5(o: &mut Outcome, c: &Catalog) {
    let horo: Vec<_> = c
        .records
        .iter()
        .filter(|r| r.family == "SL2xGm.horo" && r.params == Params::parse("n=2,a1=1").unwrap())
        .collect();
    let half = sphfano::geometry::rat::parse_vec("(1/2,0)").unwrap();
    let with_color = horo.iter().filter(|r| r.polytope.as_ref().unwrap().polytope.vertices().contains(&half)).count();
    let without = horo.len() - with_color;
    let pit0: usize = (0..=2).map(|a1| count("SL2sq.PI-T", &format!("a1={a1},a2=0"))).sum();
    let checks = [
        ("toric surfaces", count("toric", "n=2"), 5),
        ("horospherical a1=1 without color vertex", without, 9),
        ("horospherical a1=1 with color vertex", with_color, 7),
        ("GL2 compactifications", count("SL2sq.GL2", ""), 8),
        ("diagonal Borel", count("SL2sq.diagB", ""), 3),
        ("normalizer of diagonal Borel", count("SL2sq.NdiagB", ""), 2),
        ("type T induced products a2=0", pit0, 14),
    ];
    let ok = checks.iter().all(|(_, got, want)| got == want);
    let detail: Vec<String> = checks.iter().map(|(n, got, want)| format!("{n} {got}/{want}")).collect();
    o.report("5", "per-section enumeration counts (exact)", ok, detail.join(", "));
}

fn criterion_6(o: &mut Outcome) {
    let mut detail = Vec::new();
    let mut ok = true;
    for (id, want_deg, want_idx) in [("Sp4.Nsym", 625, 5), ("SL2sq.NdiagSL2", 64, 4)] {
        let params = if id == "SL2sq.NdiagSL2" { "n=0" } else { "" };
        let params = Params::parse(params).unwrap();
        let data = build(id, &params).unwrap();
        let found = enumerate(&data, &SymmetryGroup::of(&data), &EnumConfig::default()).unwrap();
        let inv: Vec<_> = found.iter().map(|c| compute(&data, &c.polytope).unwrap()).collect();
        let good = inv.len() == 1 && inv[0].degree == want_deg && inv[0].fano_index == want_idx;
        ok &= good;
        detail.push(match inv.first() {
            Some(i) => format!("{id}: {} embedding(s), degree {} index {}", inv.len(), i.degree, i.fano_index),
            None => format!("{id}: no embedding"),
        });
    }
    o.report("6", "degree spot checks (exact)", ok, detail.join("; "));
}

fn criterion_7(o: &mut Outcome, c: &Catalog) {
    // dual involution
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    let res = runner.run(&common::polygon_with_interior_origin(), |p| {
        proptest::prop_assert_eq!(p.dual().unwrap().dual().unwrap(), p);
        Ok(())
    });
    o.report("7a", "dual involution on 1000 random polygons", res.is_ok(), format!("{res:?}"));

    // degree integrality, SNF freeness
    let mut bad_deg = Vec::new();
    let mut bad_snf = Vec::new();
    for r in c.records.iter().filter(|r| r.rank > 0) {
        if r.degree == 0 {
            bad_deg.push(r.identifier.clone());
        }
        let data = build(&r.family, &r.params).unwrap();
        let p = &r.polytope.as_ref().unwrap().polytope;
        let inv = compute(&data, p).unwrap();
        if inv.degree != r.degree || inv.volume.is_zero() {
            bad_deg.push(r.identifier.clone());
        }
        let pres = picard_presentation(&data, p).unwrap();
        let d = pres.snf.1.diagonal();
        if d.len() < data.rank || d[..data.rank].iter().any(|&x| x != 1) {
            bad_snf.push(r.identifier.clone());
        }
    }
    let n = c.records.iter().filter(|r| r.rank > 0).count();
    o.report(
        "7b",
        "degree positive integer across catalog",
        bad_deg.is_empty(),
        format!("{n} records, failures {bad_deg:?}"),
    );
    o.report("7c", "SNF freeness across catalog", bad_snf.is_empty(), format!("{n} records, failures {bad_snf:?}"));

    // search against brute force
    let small = EnumConfig { box_bound: 2, max_vertices: 6 };
    let cases = [
        ("toric", "n=2", small),
        ("SL2xGm.T", "n=1,a1=1", small),
        ("SL2xGm.horo", "n=2,a1=1", small),
        ("SL2sq.diagB", "", small),
        ("SL2sq.horo1", "a1=1,a2=-1", EnumConfig::default()),
        ("SL3xSL2.horo", "a1=1,a3=-1", EnumConfig::default()),
    ];
    let mut detail = Vec::new();
    let mut ok = true;
    for (id, params, cfg) in cases {
        let data = build(id, &Params::parse(params).unwrap()).unwrap();
        let a = enumerate_raw(&data, &cfg).unwrap();
        let b = brute_force_raw(&data, &cfg).unwrap();
        ok &= a == b && !a.is_empty();
        detail.push(format!("{id}[{params}] {}={}", a.len(), b.len()));
    }
    o.report("7d", "search agrees with brute force on 6 families (raw polytope sets)", ok, detail.join(", "));

    // box doubling
    let wide = EnumConfig { box_bound: 10, ..EnumConfig::default() };
    let cases = [
        ("toric", "n=2"),
        ("SL2xGm.T", "n=1,a1=2"),
        ("SL2sq.GL2", ""),
        ("SL2sq.diagB", ""),
        ("SL3.horo2", "a1=2"),
        ("SL2sq.horo1", "a1=1,a2=-1"),
    ];
    let mut detail = Vec::new();
    let mut ok = true;
    for (id, params) in cases {
        let p = Params::parse(params).unwrap();
        let a = enumerate_family(id, &p, &EnumConfig::default()).unwrap();
        let b = enumerate_family(id, &p, &wide).unwrap();
        ok &= a == b;
        detail.push(format!("{id}[{params}] {}->{}", a.len(), b.len()));
    }
    o.report("7e", "box doubling 5 -> 10 leaves 6 families unchanged", ok, detail.join(", "));

    // symmetry invariance under every generator
    let mut bad = Vec::new();
    let mut checks = 0;
    for r in c.records.iter().filter(|r| r.rank > 0) {
        let data = build(&r.family, &r.params).unwrap();
        let p = &r.polytope.as_ref().unwrap().polytope;
        let base = compute(&data, p).unwrap();
        for t in SymmetryGroup::of(&data).generators(data.rank) {
            checks += 1;
            let img = compute(&data, &p.transform(&t).unwrap()).unwrap();
            if (img.pic, img.degree, img.k_verdict.value) != (base.pic, base.degree, base.k_verdict.value) {
                bad.push(r.identifier.clone());
            }
        }
    }
    o.report(
        "7f",
        "symmetry invariance of (pic, degree, k_verdict)",
        bad.is_empty(),
        format!("{checks} record-generator pairs, failures {bad:?}"),
    );
}

fn main() {
    let mut o = Outcome { failures: 0 };
    let t = Instant::now();
    let c = build_catalog(&[1, 2, 3, 4], &[0, 1, 2], &EnumConfig::default(), None).expect("catalog builds");
    let secs = t.elapsed().as_secs_f64();
    criterion_1(&mut o, &c, secs);
    criterion_table(
        &mut o,
        &c,
        "2",
        "dim-2 table (exact)",
        EXPECTED_DIM2_CSV,
        10,
        &[("2-1-2", 1, 9, true), ("2-1-4", 2, 8, false)],
    );
    criterion_table(
        &mut o,
        &c,
        "3",
        "dim-3 table (exact)",
        EXPECTED_DIM3_CSV,
        57,
        &[("3-1-1", 1, 54, true), ("3-2-17", 3, 40, false), ("3-2-44", 1, 64, true)],
    );
    criterion_4(&mut o, &c);
    criterion_5(&mut o, &c);
    criterion_6(&mut o);
    criterion_7(&mut o, &c);
    println!("acceptance: {} failure(s), {:.1}s total", o.failures, t.elapsed().as_secs_f64());
    if o.failures > 0 {
        std::process::exit(1);
    }
}
