use std::path::Path;

use serde_json::{json, Value};
use spintqft::recoupling::RecouplingTable;
use spintqft::rtinv::{check_splitting, tau, tau_spin, SurgeryPresentation};
use spintqft::spinalg::{arf, arf_census_formula, CharacteristicSublink, SurfaceSpinStructure};
use spintqft::tqftspace::{self, enumerate_colorings, enumerate_special, spin_dim, verlinde_dim};
use spintqft::tvinv::{tv_refined_all, GeneralizedTriangulation};
use spintqft::{gf2, verify, Error, Scalar, TheoryParams};

use crate::output::{complex, complex_cell, pass_cell, small, small_cell, Report, Table};
use crate::Failure;

fn read_input(path: &Path) -> Result<(String, Option<String>), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(4, anyhow::anyhow!("{}: {e}", path.display())))?;
    let name = serde_json::from_str::<Value>(&text)
        .ok()
        .and_then(|v| v.get("name").and_then(Value::as_str).map(str::to_string));
    Ok((text, name))
}

fn in_file(path: &Path, e: Error) -> Failure {
    let code = crate::code_of(&e);
    Failure::new(code, anyhow::anyhow!("{}: {e}", path.display()))
}

fn display_name(path: &Path, name: Option<String>) -> String {
    name.unwrap_or_else(|| path.display().to_string())
}

fn params_json(p: &TheoryParams) -> Value {
    json!({ "r": p.r(), "precision": p.precision(), "tolerance": small(p.tolerance()) })
}

pub fn constants(p: &TheoryParams) -> Result<Report, Failure> {
    let mut colors = Table::new(format!("r = {}", p.r()), &["i", "omega_i^2", "q_i^2"]);
    let mut per_color = Vec::new();
    for i in p.colors() {
        colors.row(vec![i.to_string(), complex_cell(p.omega_sq(i)), complex_cell(p.q_sq(i))]);
        per_color.push(json!({ "i": i, "omega_sq": complex(p.omega_sq(i)), "q_sq": complex(p.q_sq(i)) }));
    }

    let scalars: [(&str, &Scalar); 5] = [
        ("A", p.a()),
        ("omega^2", p.omega_squared()),
        ("omega", p.omega()),
        ("Delta", p.delta()),
        ("Delta_bar", p.delta_bar()),
    ];
    let mut global = Table::new("", &["constant", "value"]);
    let mut global_json = serde_json::Map::new();
    for (name, v) in scalars {
        global.row(vec![name.to_string(), complex_cell(v)]);
        global_json.insert(name.to_string(), complex(v));
    }

    let (checks, checks_json, passed) = identity_rows(p);
    Ok(Report {
        json: json!({
            "params": params_json(p),
            "colors": per_color,
            "constants": global_json,
            "identities": checks_json,
            "passed": passed,
        }),
        tables: vec![colors, global, checks],
        passed,
    })
}

fn identity_rows(p: &TheoryParams) -> (Table, Vec<Value>, bool) {
    let tol = p.tolerance();
    let mut table = Table::new("", &["identity", "residual", "status"]);
    let mut rows = Vec::new();
    let mut passed = true;
    for (name, res) in verify::ground_identities(p) {
        let ok = res <= tol;
        passed &= ok;
        table.row(vec![name.clone(), small_cell(res), pass_cell(ok)]);
        rows.push(json!({ "identity": name, "residual": small(res), "passed": ok }));
    }
    (table, rows, passed)
}

pub fn rt(p: &TheoryParams, path: &Path, spin: Option<&str>) -> Result<Report, Failure> {
    let (text, name) = read_input(path)?;
    let m = SurgeryPresentation::from_json_str(&text).map_err(|e| in_file(path, e))?;
    let name = display_name(path, name);
    let table = RecouplingTable::new(p);

    let mut head = Table::new(name.clone(), &["quantity", "value"]);
    head.row(vec!["components".into(), m.components().to_string()]);
    head.row(vec!["signature".into(), m.signature().to_string()]);
    let mut doc = serde_json::Map::new();
    doc.insert("params".into(), params_json(p));
    doc.insert("name".into(), json!(name));
    doc.insert("components".into(), json!(m.components()));
    doc.insert("signature".into(), json!(m.signature()));

    let mut tables = Vec::new();
    let mut passed = true;
    match spin {
        None => {
            let t = tau(&m, &table)?;
            head.row(vec!["tau".into(), complex_cell(&t)]);
            doc.insert("tau".into(), complex(&t));
            tables.push(head);
        }
        Some("all") => {
            let rep = check_splitting(&m, &table, p.tolerance())?;
            head.row(vec!["tau".into(), complex_cell(&rep.tau)]);
            head.row(vec!["splitting residual".into(), small_cell(rep.residual)]);
            head.row(vec!["splitting".into(), pass_cell(rep.holds)]);
            doc.insert("tau".into(), complex(&rep.tau));
            let mut spins = Table::new("", &["sublink", "tau(M,s)"]);
            let mut list = Vec::new();
            for (k, v) in &rep.summands {
                spins.row(vec![k.bits(), complex_cell(v)]);
                list.push(json!({ "sublink": k.bits(), "tau": complex(v) }));
            }
            doc.insert("spin".into(), Value::Array(list));
            doc.insert("splitting_residual".into(), small(rep.residual));
            doc.insert("splitting_holds".into(), json!(rep.holds));
            passed = rep.holds;
            tables.push(head);
            tables.push(spins);
        }
        Some(bits) => {
            let k = CharacteristicSublink::from_bits(m.linking_matrix(), bits)?;
            let t = tau(&m, &table)?;
            let v = tau_spin(&m, &k, &table)?;
            head.row(vec!["tau".into(), complex_cell(&t)]);
            head.row(vec![format!("tau(M,{})", k.bits()), complex_cell(&v)]);
            doc.insert("tau".into(), complex(&t));
            doc.insert("spin".into(), json!([{ "sublink": k.bits(), "tau": complex(&v) }]));
            tables.push(head);
        }
    }
    Ok(Report {
        json: Value::Object(doc),
        tables,
        passed,
    })
}

pub fn tv(p: &TheoryParams, path: &Path, h: Option<&str>) -> Result<Report, Failure> {
    let (text, _) = read_input(path)?;
    let tri = GeneralizedTriangulation::from_json_str(&text).map_err(|e| in_file(path, e))?;
    let name = display_name(path, tri.name().map(str::to_string));
    let table = RecouplingTable::new(p);
    let sums = tv_refined_all(&tri, &table);

    let mut head = Table::new(name.clone(), &["quantity", "value"]);
    head.row(vec!["tetrahedra".into(), tri.tets().to_string()]);
    head.row(vec![
        "vertices/edges/faces".into(),
        format!("{}/{}/{}", tri.vertex_count(), tri.edge_count(), tri.face_count()),
    ]);
    head.row(vec!["rank H^1(Z/2)".into(), tri.cohomology().rank().to_string()]);
    head.row(vec!["state sum".into(), complex_cell(&sums.total)]);
    let mut doc = serde_json::Map::new();
    doc.insert("params".into(), params_json(p));
    doc.insert("name".into(), json!(name));
    doc.insert("tetrahedra".into(), json!(tri.tets()));
    doc.insert("vertices".into(), json!(tri.vertex_count()));
    doc.insert("edges".into(), json!(tri.edge_count()));
    doc.insert("faces".into(), json!(tri.face_count()));
    doc.insert("cohomology_rank".into(), json!(tri.cohomology().rank()));
    doc.insert("state_sum".into(), complex(&sums.total));
    let mut tables = vec![head];

    if let Some(sel) = h {
        let chosen: Vec<usize> = if sel == "all" {
            (0..sums.by_class.len()).collect()
        } else {
            let k: usize = sel
                .parse()
                .map_err(|_| Failure::new(2, anyhow::anyhow!("--h expects `all` or a class index, got {sel:?}")))?;
            if k >= sums.by_class.len() {
                return Err(Error::OutOfRange { index: k, len: sums.by_class.len() }.into());
            }
            vec![k]
        };
        let mut classes = Table::new("", &["index", "class", "Z(M,h)", "nonnegative"]);
        let mut list = Vec::new();
        for k in chosen {
            let (cls, v) = &sums.by_class[k];
            let flagged = sums.sign_flags.contains(cls);
            let label = if cls.coords.is_empty() { "0".to_string() } else { cls.bits() };
            classes.row(vec![k.to_string(), label.clone(), complex_cell(v), (!flagged).to_string()]);
            list.push(json!({ "index": k, "class": label, "value": complex(v), "nonnegative": !flagged }));
        }
        doc.insert("refined".into(), Value::Array(list));
        tables.push(classes);
    }
    Ok(Report {
        json: Value::Object(doc),
        tables,
        passed: true,
    })
}

fn parse_genus_range(s: &str) -> Result<std::ops::RangeInclusive<usize>, Failure> {
    let bad = || Failure::new(2, anyhow::anyhow!("--genus expects `g` or `a..b`, got {s:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let a: usize = a.parse().map_err(|_| bad())?;
    let b: usize = b.parse().map_err(|_| bad())?;
    if a == 0 {
        return Err(Error::InvalidGenus.into());
    }
    if b < a || b > 8 {
        return Err(bad());
    }
    Ok(a..=b)
}

pub fn dims(p: &TheoryParams, genus: &str) -> Result<Report, Failure> {
    let range = parse_genus_range(genus)?;
    let mut main = Table::new(
        format!("r = {}", p.r()),
        &["g", "verlinde", "dim Arf 0", "dim Arf 1", "#Arf 0", "#Arf 1", "census", "colorings"],
    );
    let mut sectors = Table::new("colorings per parity sector", &["g", "sector", "count"]);
    let mut list = Vec::new();
    let mut passed = true;
    for g in range {
        let v = verlinde_dim(g, p)?;
        let d0 = spin_dim(g, 0, p)?;
        let d1 = spin_dim(g, 1, p)?;
        let (n0, n1) = arf_census_formula(g);
        let census = n0 * d0 + n1 * d1 == v;
        passed &= census;
        let mut entry = json!({
            "genus": g,
            "verlinde": v,
            "spin_dim": [d0, d1],
            "arf_counts": [n0, n1],
            "census_holds": census,
        });
        let mut count_cell = "-".to_string();
        if g <= 3 {
            let n = enumerate_colorings(g, p)?.len() as u64;
            passed &= n == v;
            count_cell = n.to_string();
            entry["colorings"] = json!(n);
            let mut per = serde_json::Map::new();
            for mask in 0u32..1 << g {
                let s: Vec<u8> = (0..g).map(|i| (mask >> i & 1) as u8).collect();
                let set = enumerate_special(g, &s, p)?;
                let label = gf2::format_bits(&s);
                sectors.row(vec![g.to_string(), label.clone(), set.colorings.len().to_string()]);
                per.insert(label, json!(set.colorings.len()));
            }
            entry["sectors"] = Value::Object(per);
        }
        main.row(vec![
            g.to_string(),
            v.to_string(),
            d0.to_string(),
            d1.to_string(),
            n0.to_string(),
            n1.to_string(),
            pass_cell(census),
            count_cell,
        ]);
        list.push(entry);
    }
    let mut tables = vec![main];
    if !sectors.rows.is_empty() {
        tables.push(sectors);
    }
    Ok(Report {
        json: json!({ "params": params_json(p), "dims": list, "passed": passed }),
        tables,
        passed,
    })
}

pub fn projector(
    p: &TheoryParams,
    g: usize,
    select: Option<(&str, &str)>,
    entries: bool,
) -> Result<Report, Failure> {
    if g == 0 {
        return Err(Error::InvalidGenus.into());
    }
    let structures = match select {
        Some((qa, qb)) => {
            let parse = |s: &str| {
                gf2::parse_bits(s)
                    .filter(|v| v.len() == g)
                    .ok_or_else(|| Failure::new(2, anyhow::anyhow!("expected {g} bits, got {s:?}")))
            };
            vec![SurfaceSpinStructure::new(parse(qa)?, parse(qb)?)?]
        }
        None => SurfaceSpinStructure::all(g),
    };
    let tol = p.tolerance();
    let mut summary = Table::new(
        format!("genus {g}, r = {}", p.r()),
        &["structure", "Arf", "trace", "rank", "spin_dim", "idempotence", "status"],
    );
    let mut entry_table = Table::new("nonzero entries", &["structure", "row", "column", "value"]);
    let mut list = Vec::new();
    let mut passed = true;
    for sigma in &structures {
        let pr = tqftspace::projector(sigma, p)?;
        let a = arf(sigma);
        let d = spin_dim(g, a, p)?;
        let trace = pr.trace();
        let rank = pr.rank();
        let idem = pr.idempotence_residual();
        let ok = idem <= tol && trace.is_integer() && trace.to_integer() == d.into() && rank as u64 == d;
        passed &= ok;
        summary.row(vec![
            sigma.label(),
            a.to_string(),
            trace.to_string(),
            rank.to_string(),
            d.to_string(),
            small_cell(idem),
            pass_cell(ok),
        ]);
        let mut e = json!({
            "qa": gf2::format_bits(&sigma.qa),
            "qb": gf2::format_bits(&sigma.qb),
            "arf": a,
            "trace": trace.to_string(),
            "rank": rank,
            "spin_dim": d,
            "idempotence_residual": small(idem),
        });
        if entries {
            let mut nz = Vec::new();
            for ((i, j), v) in pr.matrix.nonzeros() {
                let (bi, bj) = (format!("{:?}", pr.basis[i]), format!("{:?}", pr.basis[j]));
                entry_table.row(vec![sigma.label(), bi.clone(), bj.clone(), pr.matrix.get(i, j).to_string()]);
                nz.push(json!({ "row": pr.basis[i], "column": pr.basis[j], "value": v }));
            }
            e["entries"] = Value::Array(nz);
        }
        list.push(e);
    }
    let mut doc = json!({ "params": params_json(p), "genus": g, "projectors": list });
    let mut tables = vec![summary];
    if select.is_none() {
        let family = verify::projector_family(g, p)?;
        let ok = family <= tol;
        passed &= ok;
        let mut t = Table::new("", &["check", "residual", "status"]);
        t.row(vec![
            "idempotent, orthogonal, complete".into(),
            small_cell(family),
            pass_cell(ok),
        ]);
        doc["family_residual"] = small(family);
        tables.push(t);
    }
    if entries {
        tables.push(entry_table);
    }
    doc["passed"] = json!(passed);
    Ok(Report {
        json: doc,
        tables,
        passed,
    })
}

pub fn verify(p: &TheoryParams, seed: u64) -> Result<Report, Failure> {
    let results = verify::run_all(p, seed)?;
    let mut table = Table::new(
        format!("r = {}, seed = {seed:#x}", p.r()),
        &["check", "residual", "status", "detail"],
    );
    let mut list = Vec::new();
    let mut passed = true;
    for c in &results {
        passed &= c.passed;
        table.row(vec![c.name.clone(), small_cell(c.residual), pass_cell(c.passed), c.detail.clone()]);
        list.push(json!({
            "check": c.name,
            "passed": c.passed,
            "residual": small(c.residual),
            "detail": c.detail,
        }));
    }
    Ok(Report {
        json: json!({ "params": params_json(p), "seed": seed, "checks": list, "passed": passed }),
        tables: vec![table],
        passed,
    })
}
