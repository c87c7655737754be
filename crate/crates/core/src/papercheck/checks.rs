use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::{CheckConfig, Finding};
use crate::codes::{subset_to_codeword, transposition_ball};
use crate::error::Result;
use crate::graphs::{
    cell_to_pair, gamma_graph, graph_distance, path_graph, reflection_automorphism, token_graph, triangle_window,
    Graph, Host, Label, WindowSpec,
};
use crate::packing::{
    column_profile_census, constrained_max, enumerate_packings, rho_exact, rho_window_dp, Constraint, EnumOptions,
    Target,
};
use crate::theory::{
    a_closed, conjectured_ogf, construction_a, construction_band_terms, fisher_rho, known_value, ogf_coefficients,
    strip_construction,
};

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn finding(parameters: BTreeMap<String, Value>, observed: Value, expected: Value) -> Finding {
    Finding { parameters, observed, expected, notes: BTreeMap::new() }
}

fn optimum(host: Host, c: &Constraint, cfg: &CheckConfig) -> Result<Option<usize>> {
    Ok(constrained_max(&host, c, &cfg.solver)?.optimum)
}

pub(super) fn table_values(cfg: &CheckConfig) -> Result<Finding> {
    let mut observed = BTreeMap::new();
    let mut expected = BTreeMap::new();
    let mut closed = BTreeMap::new();
    let mut closed_expected = BTreeMap::new();
    for n in 2..=cfg.triangle_max {
        let g = triangle_window(&WindowSpec::full(n)?)?;
        let rho = rho_exact(&g, &cfg.solver)?.optimum.unwrap_or(0) as i64;
        observed.insert(n.to_string(), rho);
        if let Some(v) = known_value(n) {
            expected.insert(n.to_string(), v);
        }
        if n >= 6 {
            closed.insert(n.to_string(), a_closed(n)?);
            closed_expected.insert(n.to_string(), rho);
        }
    }
    Ok(finding(
        params(&[("n", json!([2, cfg.triangle_max])), ("solver", json!("branch-and-bound"))]),
        json!({ "rho": observed, "closed_form": closed }),
        json!({ "rho": expected, "closed_form": closed_expected }),
    ))
}

pub(super) fn strip5(cfg: &CheckConfig) -> Result<Finding> {
    let mut observed = BTreeMap::new();
    let mut expected = BTreeMap::new();
    for m in 5..=cfg.strip5_max {
        let host = Host::Window(WindowSpec::strip(m, 5)?);
        let r = rho_window_dp(&host, &Constraint::new(), &cfg.solver)?;
        observed.insert(m.to_string(), r.optimum.unwrap_or(0) as i64);
        expected.insert(m.to_string(), m - 1);
    }
    Ok(finding(
        params(&[("m", json!([5, cfg.strip5_max])), ("solver", json!("profile-dp"))]),
        json!(observed),
        json!(expected),
    ))
}

pub(super) fn strip10(cfg: &CheckConfig) -> Result<Finding> {
    let mut observed = BTreeMap::new();
    let mut expected = BTreeMap::new();
    for n in 11..=cfg.strip10_max {
        let host = Host::Window(WindowSpec::strip(n, 10)?);
        let r = rho_window_dp(&host, &Constraint::new(), &cfg.solver)?;
        observed.insert(n.to_string(), r.optimum.unwrap_or(0) as i64);
        expected.insert(n.to_string(), if n == 11 { 15 } else { 2 * n - 8 });
    }
    Ok(finding(
        params(&[("n", json!([11, cfg.strip10_max])), ("solver", json!("profile-dp"))]),
        json!(observed),
        json!(expected),
    ))
}

pub(super) fn fisher(cfg: &CheckConfig) -> Result<Finding> {
    let mut dp_mismatch = Vec::new();
    let mut bnb_mismatch = Vec::new();
    for p in 1..=cfg.grid_p_max {
        for q in 1..=cfg.grid_q_max {
            let formula = fisher_rho(p, q)? as usize;
            // p rows of height p, q columns
            let host = Host::Grid { rows: p as i64, cols: q as i64 };
            let got = rho_window_dp(&host, &Constraint::new(), &cfg.solver)?.optimum.unwrap_or(0);
            if got != formula {
                dp_mismatch.push(json!({"p": p, "q": q, "formula": formula, "solver": got}));
            }
            if p <= cfg.grid_exact_max && q <= cfg.grid_exact_max {
                let g = host.graph()?;
                let got = rho_exact(&g, &cfg.solver)?.optimum.unwrap_or(0);
                if got != formula {
                    bnb_mismatch.push(json!({"p": p, "q": q, "formula": formula, "solver": got}));
                }
            }
        }
    }
    let special = json!({ "7x7": fisher_rho(7, 7)?, "8x10": fisher_rho(8, 10)? });
    Ok(finding(
        params(&[
            ("p", json!([1, cfg.grid_p_max])),
            ("q", json!([1, cfg.grid_q_max])),
            ("exact_cross_check", json!([1, cfg.grid_exact_max])),
        ]),
        json!({ "dp_mismatches": dp_mismatch, "bnb_mismatches": bnb_mismatch, "special": special }),
        json!({ "dp_mismatches": [], "bnb_mismatches": [], "special": { "7x7": 10, "8x10": 17 } }),
    ))
}

pub(super) fn t10_enum(cfg: &CheckConfig) -> Result<Finding> {
    let n = 10;
    let host = Host::Window(WindowSpec::full(n)?);
    let refl = reflection_automorphism(n)?;
    let opts = EnumOptions { group: vec![refl.clone()], ..Default::default() };
    let e = enumerate_packings(&host, &Constraint::new(), Target::Maximum, &opts, &cfg.solver)?;
    let g = host.graph()?;
    let sets: Vec<Vec<usize>> = e
        .solutions
        .iter()
        .map(|s| s.cells.iter().map(|&c| g.cell_index(c).expect("cell in host")).collect())
        .collect();
    let closed = sets.iter().all(|s| {
        let mut image: Vec<usize> = s.iter().map(|&v| refl[v]).collect();
        image.sort_unstable();
        sets.contains(&image)
    });
    let mut f = finding(
        params(&[("n", json!(n)), ("group", json!("identity, anti-diagonal reflection"))]),
        json!({ "maximum": e.target_size, "packings": e.count, "closed_under_reflection": closed }),
        json!({ "maximum": 13, "packings": 4, "closed_under_reflection": true }),
    );
    f.notes.insert("reflection_classes".into(), json!(e.canonical_classes));
    f.notes.insert(
        "packings".into(),
        json!(e.solutions.iter().map(|s| s.cell_vec().iter().map(|c| [c.x, c.y]).collect::<Vec<_>>()).collect::<Vec<_>>()),
    );
    Ok(f)
}

pub(super) fn g105_census(cfg: &CheckConfig) -> Result<Finding> {
    let host = Host::Grid { rows: 10, cols: 5 };
    let c = (1..=5).fold(Constraint::new(), |c, x| c.column(x, 2, 2));
    let e = enumerate_packings(&host, &c, Target::Any, &EnumOptions::default(), &cfg.solver)?;
    let split = e
        .solutions
        .iter()
        .filter(|s| {
            let ys: Vec<i64> = s.cells.iter().filter(|c| c.x == 3).map(|c| c.y).collect();
            ys.iter().filter(|&&y| y <= 5).count() == 1 && ys.iter().filter(|&&y| y >= 6).count() == 1
        })
        .count();
    Ok(finding(
        params(&[("rows", json!(10)), ("cols", json!(5)), ("per_column", json!(2))]),
        json!({ "packings": e.count, "middle_column_split": split }),
        json!({ "packings": 54, "middle_column_split": 54 }),
    ))
}

pub(super) fn column_configs(cfg: &CheckConfig) -> Result<Finding> {
    let unique = column_profile_census(10, Some(4), &cfg.solver)?;
    let all = column_profile_census(10, None, &cfg.solver)?.len();
    // columns j-1, j, j+1 as x = 1, 2, 3 of a 10-row grid; (j,n) and (j,n-9)
    // are the two ends of the middle column
    let host = Host::Grid { rows: 10, cols: 3 };
    let c = Constraint::new().column(1, 2, 2).column(2, 3, 3).column(3, 1, 1).force((2, 1)).force((2, 10));
    let e = enumerate_packings(&host, &c, Target::Any, &EnumOptions::default(), &cfg.solver)?;
    let left_ok = e.solutions.iter().all(|s| {
        // every configuration leaves at most one cell for column j-2
        let shifted = Host::Grid { rows: 10, cols: 4 };
        let mut k = Constraint::new();
        for cell in &s.cells {
            k = k.force((cell.x + 1, cell.y));
        }
        let left = optimum(shifted, &k.column(1, 2, 10), cfg).map(|o| o.is_none());
        left.unwrap_or(false)
    });
    Ok(finding(
        params(&[
            ("height", json!(10)),
            ("encoding", json!("grid 10x3, column counts (2,3,1), cells (2,1) and (2,10) forced")),
        ]),
        json!({ "size4": unique, "census": all, "configurations": e.count, "left_neighbor_at_most_one": left_ok }),
        json!({ "size4": [[1, 4, 7, 10]], "census": 60, "configurations": 4, "left_neighbor_at_most_one": true }),
    ))
}

fn window26_constraints(w: &WindowSpec, n: i64) -> Result<Constraint> {
    let sub = |xl, xh, yl, yh| w.sub(xl, xh, yl, yh);
    let mut c = Constraint::new()
        .region(sub(n - 9, n, n - 9, n)?, 12, 12)
        .region(sub(n - 4, n, n - 4, n)?, 4, 4)
        .region(sub(n - 9, n - 5, n - 9, n - 5)?, 3, 3);
    for i in n - 14..=n - 5 {
        c = c.region(sub(i, i, n - 4, n)?, 1, 1);
    }
    for i in n - 14..=n - 12 {
        c = c.region(sub(i, i, n - 9, n - 5)?, 1, 1);
    }
    Ok(c)
}

pub(super) fn window26(cfg: &CheckConfig) -> Result<Finding> {
    let n = cfg.window_n;
    let w = WindowSpec::new(n, n - 14, n, n - 9, n)?;
    let host = Host::Window(w);
    let base = window26_constraints(&w, n)?;
    let c = base
        .clone()
        .region(w.sub(n - 11, n - 11, n - 9, n - 5)?, 1, 1)
        .region(w.sub(n - 10, n - 10, n - 9, n - 5)?, 1, 1);
    let proj = w.sub(n - 14, n - 5, n - 9, n - 5)?;
    let opts = EnumOptions { project_onto: Some(proj), count_only: true, ..Default::default() };
    let e = enumerate_packings(&host, &c, Target::Any, &opts, &cfg.solver)?;
    let variant = base.region(w.sub(n - 10, n - 10, n - 9, n - 5)?, 2, 2);
    let counted = EnumOptions { count_only: true, ..Default::default() };
    let e5 = enumerate_packings(&host, &variant, Target::Any, &counted, &cfg.solver)?;
    Ok(finding(
        params(&[
            ("n", json!(n)),
            ("window", json!(w.to_string())),
            ("projection", json!(proj.to_string())),
            ("constraints", serde_json::from_str(&c.to_json())?),
        ]),
        json!({ "restricted_configurations": e.count, "variant_packings": e5.count }),
        json!({ "restricted_configurations": 26, "variant_packings": 0 }),
    ))
}

pub(super) fn n19_column8(cfg: &CheckConfig) -> Result<Finding> {
    let host = Host::Grid { rows: 10, cols: 8 };
    let constrained = optimum(host, &Constraint::new().column(8, 0, 2), cfg)?;
    let free = optimum(host, &Constraint::new(), cfg)?;
    Ok(finding(
        params(&[("rows", json!(10)), ("cols", json!(8)), ("column8_max", json!(2))]),
        json!({ "constrained_max": constrained, "unconstrained": free, "formula": fisher_rho(8, 10)? }),
        json!({ "constrained_max": 16, "unconstrained": 17, "formula": 17 }),
    ))
}

pub(super) fn constructions(cfg: &CheckConfig) -> Result<Finding> {
    let mut bad = Vec::new();
    for n in 11..=cfg.construction_max {
        let a = construction_a(n)?;
        let (constant, terms) = construction_band_terms(n)?;
        let band_sum = constant + terms.iter().map(|t| t.summand).sum::<i64>();
        let bands_ok = terms.iter().all(|t| t.class_count as i64 == t.summand);
        if !a.is_valid()? || a.len() as i64 != a_closed(n)? || band_sum != a_closed(n)? || !bands_ok {
            bad.push(json!({"n": n, "size": a.len(), "band_sum": band_sum}));
        }
    }
    for m in 5..=cfg.strip5_max {
        let s = strip_construction(m, 5)?;
        if !s.is_valid()? || s.len() as i64 != m - 1 {
            bad.push(json!({"strip": 5, "m": m, "size": s.len()}));
        }
    }
    for m in 12..=cfg.strip10_max {
        let s = strip_construction(m, 10)?;
        if !s.is_valid()? || s.len() as i64 != 2 * m - 8 {
            bad.push(json!({"strip": 10, "m": m, "size": s.len()}));
        }
    }
    Ok(finding(
        params(&[
            ("n", json!([11, cfg.construction_max])),
            ("strip5", json!([5, cfg.strip5_max])),
            ("strip10", json!([12, cfg.strip10_max])),
        ]),
        json!({ "violations": bad }),
        json!({ "violations": [] }),
    ))
}

pub(super) fn ogf(cfg: &CheckConfig) -> Result<Finding> {
    let count = cfg.ogf_max + 1;
    let c = ogf_coefficients(&conjectured_ogf(), count.max(17))?;
    let table: Vec<i64> = (1..=17).map(|n| known_value(n).expect("tabulated")).collect();
    let mut mismatches = Vec::new();
    for (k, &v) in c.iter().enumerate().take(cfg.ogf_max + 1).skip(5) {
        if v != a_closed(k as i64 + 1)? {
            mismatches.push(k);
        }
    }
    Ok(finding(
        params(&[("coefficients", json!(count))]),
        json!({ "first17": &c[..17], "closed_form_mismatches": mismatches }),
        json!({ "first17": table, "closed_form_mismatches": [] }),
    ))
}

fn pair_label(a: i64, b: i64) -> Label {
    Label::Subset(vec![Label::Int(a), Label::Int(b)])
}

/// Whether `map` (vertex of `a` to vertex of `b`) is a bijection carrying
/// edges exactly onto edges.
fn is_isomorphism(a: &Graph, b: &Graph, map: &[usize]) -> bool {
    let mut seen = vec![false; b.vertex_count()];
    for &m in map {
        if seen[m] {
            return false;
        }
        seen[m] = true;
    }
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && a.edges().all(|(u, v)| b.has_edge(map[u], map[v]))
}

pub(super) fn code_equivalence(cfg: &CheckConfig) -> Result<Finding> {
    let mut counterexamples = Vec::new();
    let mut pairs = 0u64;
    for n in 2..=cfg.code_max {
        let g = gamma_graph(n)?;
        let words: Vec<_> = (0..g.vertex_count())
            .map(|v| match g.label(v) {
                Label::Bits(b) => b.parse::<crate::codes::Codeword>(),
                _ => unreachable!("gamma labels are words"),
            })
            .collect::<Result<_>>()?;
        let balls: Vec<_> = words.iter().map(transposition_ball).collect();
        for u in 0..words.len() {
            for v in u + 1..words.len() {
                pairs += 1;
                let disjoint = balls[u].is_disjoint(&balls[v]);
                let far = graph_distance(&g, u, v)?.is_none_or(|d| d >= 3);
                if disjoint != far {
                    counterexamples.push(json!([words[u].to_string(), words[v].to_string()]));
                }
            }
        }
    }
    let mut not_isomorphic = Vec::new();
    for n in 1..=cfg.code_max as i64 - 1 {
        let t = triangle_window(&WindowSpec::full(n)?)?;
        let f2 = token_graph(&path_graph(n as usize + 1)?, 2)?;
        let gamma = gamma_graph(n as usize + 1)?;
        let to_f2: Option<Vec<usize>> = (0..t.vertex_count())
            .map(|v| {
                let (a, b) = cell_to_pair(t.cell(v).expect("lattice"));
                f2.index_of(&pair_label(a, b))
            })
            .collect();
        let to_gamma: Option<Vec<usize>> = (0..f2.vertex_count())
            .map(|v| match f2.label(v) {
                Label::Subset(items) => {
                    let ends: Vec<usize> = items
                        .iter()
                        .map(|l| match l {
                            Label::Int(i) => *i as usize,
                            _ => 0,
                        })
                        .collect();
                    let word = subset_to_codeword(&ends, n as usize + 1).ok()?;
                    gamma.index_of(&Label::Bits(word.to_string()))
                }
                _ => None,
            })
            .collect();
        let ok = match (to_f2, to_gamma) {
            (Some(a), Some(b)) => is_isomorphism(&t, &f2, &a) && is_isomorphism(&f2, &gamma, &b),
            _ => false,
        };
        if !ok {
            not_isomorphic.push(n);
        }
    }
    let mut f = finding(
        params(&[("n", json!([2, cfg.code_max])), ("ball", json!("closed"))]),
        json!({ "counterexamples": counterexamples, "isomorphism_failures": not_isomorphic }),
        json!({ "counterexamples": [], "isomorphism_failures": [] }),
    );
    f.notes.insert("pairs_checked".into(), json!(pairs));
    Ok(f)
}

pub(super) fn proofstep_audits(cfg: &CheckConfig) -> Result<Finding> {
    let n = cfg.audit_n;
    let w = WindowSpec::strip(n, 10)?;
    let host = Host::Window(w);
    let target = (2 * n - 8) as usize;
    let top = n - 4;
    let mut optima = BTreeMap::new();
    let mut reached = Vec::new();
    let mut record = |name: String, c: Constraint| -> Result<()> {
        let o = optimum(host, &c, cfg)?;
        if o.is_some_and(|o| o >= target) {
            reached.push(name.clone());
        }
        optima.insert(name, json!(o));
        Ok(())
    };
    // a column count other than 2 is at most 1 or at least 3
    for j in 10..=n - 12 {
        record(format!("column {j} <= 1"), Constraint::new().column(j, 0, 1))?;
        record(format!("column {j} >= 3"), Constraint::new().column(j, 3, 10))?;
    }
    record("last ten columns <= 11".into(), Constraint::new().region(w.sub(n - 9, n, n - 9, n)?, 0, 11))?;
    let five = WindowSpec::strip(n, 5)?;
    let prefix = w.sub(1, 9, top, n)?;
    let top_full = (n - 1) as usize;
    record(
        format!("top five = {top_full}, columns 1..9 <= 8"),
        Constraint::new().region(five, top_full, top_full).region(prefix, 0, 8),
    )?;
    record(
        format!("top five = {top_full}, columns 1..9 >= 10"),
        Constraint::new().region(five, top_full, top_full).region(prefix, 10, 45),
    )?;
    let free = optimum(host, &Constraint::new(), cfg)?;
    let mut f = finding(
        params(&[("n", json!(n)), ("window", json!(w.to_string())), ("target", json!(target))]),
        json!({ "unconstrained": free, "cases_reaching_target": reached }),
        json!({ "unconstrained": target, "cases_reaching_target": [] }),
    );
    f.notes.insert("optima".into(), json!(optima));
    Ok(f)
}
