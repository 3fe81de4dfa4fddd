//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spintqft::recoupling::RecouplingTable;
use spintqft::rtinv::{
    check_splitting, refined_kirby_blowup, spin_pairing, tau, tau_spin, BlowupSite,
    SurgeryPresentation,
};
use spintqft::spinalg::{arf_census, arf_census_formula};
use spintqft::tqftspace::{enumerate_colorings, spin_dim, verlinde_dim};
use spintqft::tvinv::{tv_refined_all, tv_state_sum, GeneralizedTriangulation};
use spintqft::verify::{self, DEFAULT_SEED};
use spintqft::{Scalar, TheoryParams};

struct Outcome {
    ok: bool,
    detail: String,
}

fn params(r: usize) -> TheoryParams {
    TheoryParams::new(r, 128, 1e-20).unwrap()
}

fn data(rel: &str) -> String {
    std::fs::read_to_string(format!("{}/data/{rel}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn link(name: &str) -> SurgeryPresentation {
    SurgeryPresentation::from_json_str(&data(&format!("links/{name}.json"))).unwrap()
}

fn triangulation(name: &str) -> GeneralizedTriangulation {
    GeneralizedTriangulation::from_json_str(&data(&format!("triangulations/{name}.json"))).unwrap()
}

fn ground() -> Outcome {
    let mut worst = 0.0f64;
    for r in [8, 12] {
        for (_, res) in verify::ground_identities(&params(r)) {
            worst = worst.max(res);
        }
    }
    Outcome {
        ok: worst <= 1e-18,
        detail: format!("r = 8, 12; worst residual {worst:.2e}"),
    }
}

fn circles() -> Outcome {
    let res = verify::circle_relations(&params(8));
    Outcome {
        ok: res <= 1e-15,
        detail: format!("all j, both parities; residual {res:.2e}"),
    }
}

fn sixj() -> Outcome {
    let mut anchor = 0.0f64;
    let mut be = 0.0f64;
    let mut orth = 0.0f64;
    for r in [8, 12] {
        let t = RecouplingTable::new(&params(r));
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
        anchor = anchor.max(verify::sixj_anchor(&t));
        be = be.max(verify::biedenharn_elliott(&t, 20, &mut rng));
        orth = orth.max(verify::orthogonality(&t, 20, &mut rng));
    }
    Outcome {
        ok: anchor <= 1e-15 && be <= 1e-15 && orth <= 1e-15,
        detail: format!("anchor {anchor:.2e}, Biedenharn-Elliott {be:.2e}, orthogonality {orth:.2e}"),
    }
}

fn rt_values() -> Outcome {
    let p = params(8);
    let t = RecouplingTable::new(&p);
    let tol = 1e-12;
    let inv_omega = p.omega().inv();
    let mut worst = 0.0f64;
    for name in ["s3_empty", "s3_plus_one", "s3_minus_one"] {
        worst = worst.max(tau(&link(name), &t).unwrap().distance(&inv_omega));
    }
    worst = worst.max(tau(&link("s1xs2"), &t).unwrap().distance(&p.one()));

    let mut blowups = 0;
    for q in 2..=4 {
        let m = SurgeryPresentation::lens(q);
        let before = tau(&m, &t).unwrap();
        for k in m.spin_structures() {
            let refined = tau_spin(&m, &k, &t).unwrap();
            for eps in [1, -1] {
                for site in [BlowupSite::Disjoint, BlowupSite::Strands { start: 0, len: 1 }] {
                    let (m2, k2) = refined_kirby_blowup(&m, &k, eps, site).unwrap();
                    worst = worst.max(tau(&m2, &t).unwrap().distance(&before));
                    worst = worst.max(tau_spin(&m2, &k2, &t).unwrap().distance(&refined));
                    blowups += 1;
                }
            }
        }
    }
    Outcome {
        ok: worst <= tol,
        detail: format!("S3 x3, S1xS2, {blowups} blow-ups of L(2..4,1); residual {worst:.2e}"),
    }
}

fn splitting() -> Outcome {
    let p = params(8);
    let t = RecouplingTable::new(&p);
    let mut worst = 0.0f64;
    for m in [SurgeryPresentation::sphere(), SurgeryPresentation::lens(0)]
        .into_iter()
        .chain((2..=6).map(SurgeryPresentation::lens))
    {
        worst = worst.max(check_splitting(&m, &t, 1e-12).unwrap().residual);
    }
    let half = Scalar::from_ratio(p.precision(), 1, 2);
    let rep = check_splitting(&SurgeryPresentation::lens(0), &t, p.tolerance()).unwrap();
    let halves = rep.summands.len() == 2 && rep.summands.iter().all(|(_, v)| v.approx_eq(&half, p.tolerance()));
    Outcome {
        ok: worst <= 1e-12 && halves,
        detail: format!("S3, S1xS2, L(2..6,1) residual {worst:.2e}; S1xS2 halves {halves}"),
    }
}

fn dims() -> Outcome {
    let p = params(8);
    let mut ok = spin_dim(1, 0, &p).unwrap() == 2 && spin_dim(1, 1, &p).unwrap() == 1;
    for g in 1..=3 {
        let h = 1u64 << (g - 1);
        let t = 1u64 << g;
        let lhs = h * (t + 1) * spin_dim(g, 0, &p).unwrap() + h * (t - 1) * spin_dim(g, 1, &p).unwrap();
        ok &= lhs == verlinde_dim(g, &p).unwrap();
    }
    let brute = enumerate_colorings(2, &p).unwrap().len() as u64;
    ok &= brute == verlinde_dim(2, &p).unwrap();
    Outcome {
        ok,
        detail: format!("g=1: 2 and 1; census g = 1..3; G^2 colorings {brute}"),
    }
}

fn projectors() -> Outcome {
    let p = params(8);
    let res = (1..=2).map(|g| verify::projector_family(g, &p).unwrap()).fold(0.0f64, f64::max);
    Outcome {
        ok: res < 1e-12,
        detail: format!("g = 1, 2; residual {res:.2e}"),
    }
}

fn tv() -> Outcome {
    let p = params(8);
    let t = RecouplingTable::new(&p);
    let tol = 1e-10;
    let pairs = [
        ("s3_one_tet", SurgeryPresentation::sphere()),
        ("s3_two_tet", SurgeryPresentation::sphere()),
        ("s2xs1", SurgeryPresentation::lens(0)),
        ("rp3", SurgeryPresentation::lens(2)),
        ("l31", SurgeryPresentation::lens(3)),
    ];
    let mut norm = 0.0f64;
    let mut sum = 0.0f64;
    let mut refined = 0.0f64;
    for (name, m) in &pairs {
        let tri = triangulation(name);
        let z = tv_state_sum(&tri, &t);
        let tm = tau(m, &t).unwrap();
        norm = norm.max(z.distance(&(&tm * &tm.conj())));
        let all = tv_refined_all(&tri, &t);
        let total: Scalar = all.by_class.iter().map(|(_, v)| v.clone()).sum();
        sum = sum.max(total.distance(&z));
        if matches!(*name, "s2xs1" | "rp3") {
            for (h, v) in &all.by_class {
                refined = refined.max(v.distance(&spin_pairing(m, &h.coords, &t).unwrap()));
            }
        }
    }
    Outcome {
        ok: norm <= tol && sum <= tol && refined <= tol,
        detail: format!("|tau|^2 {norm:.2e}, class sum {sum:.2e}, refined {refined:.2e}"),
    }
}

fn solid_torus() -> Outcome {
    let p = params(8);
    let res = verify::solid_torus(&p);
    Outcome {
        ok: res <= p.tolerance(),
        detail: format!("all (i, j) in I^2; residual {res:.2e}"),
    }
}

fn spin_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let counts = verify::sublink_counts(30, &mut rng);
    let values = verify::component_spin_values(5);
    let census = (1..=3).all(|g| arf_census(g) == arf_census_formula(g));
    Outcome {
        ok: counts == 0 && values == 0 && census,
        detail: format!("{counts} count mismatches, {values} s(L_i) failures (m <= 5), census {census}"),
    }
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("ground identities", Duration::from_secs(1), ground),
        ("circle relations", Duration::from_secs(10), circles),
        ("6j symbols", Duration::from_secs(10), sixj),
        ("RT values and Kirby moves", Duration::from_secs(30), rt_values),
        ("spin splitting", Duration::from_secs(60), splitting),
        ("dimensions", Duration::from_secs(10), dims),
        ("projectors", Duration::from_secs(30), projectors),
        ("TV factorization", Duration::from_secs(300), tv),
        ("solid torus", Duration::from_secs(5), solid_torus),
        ("spin algebra", Duration::from_secs(5), spin_algebra),
    ];
    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let ok = out.ok && elapsed <= *budget;
        failed += !ok as usize;
        println!(
            "{} {:>2}. {name}: {} [{:.2}s of {}s]",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            out.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
