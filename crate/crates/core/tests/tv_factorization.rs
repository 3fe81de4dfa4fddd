use spintqft::recoupling::RecouplingTable;
use spintqft::rtinv::{spin_pairing, tau, SurgeryPresentation};
use spintqft::tvinv::{tv_refined_all, tv_state_sum, GeneralizedTriangulation};
use spintqft::{Scalar, TheoryParams};

fn load(name: &str) -> GeneralizedTriangulation {
    let path = format!("{}/data/triangulations/{name}.json", env!("CARGO_MANIFEST_DIR"));
    GeneralizedTriangulation::from_json_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn pairs() -> Vec<(&'static str, SurgeryPresentation)> {
    vec![
        ("s3_one_tet", SurgeryPresentation::sphere()),
        ("s3_two_tet", SurgeryPresentation::sphere()),
        ("s2xs1", SurgeryPresentation::lens(0)),
        ("rp3", SurgeryPresentation::lens(2)),
        ("l31", SurgeryPresentation::lens(3)),
    ]
}

#[test]
fn state_sum_is_norm_squared() {
    let table = RecouplingTable::new(&TheoryParams::new(8, 128, 1e-20).unwrap());
    for (name, m) in pairs() {
        let z = tv_state_sum(&load(name), &table);
        let t = tau(&m, &table).unwrap();
        let expect = &t * &t.conj();
        assert!(z.approx_eq(&expect, 1e-18), "{name}: {z} vs {expect}");
    }
}

#[test]
fn refined_sums_match_spin_pairings() {
    let table = RecouplingTable::new(&TheoryParams::new(8, 128, 1e-20).unwrap());
    for (name, m) in pairs() {
        let tri = load(name);
        let all = tv_refined_all(&tri, &table);
        let total: Scalar = all.by_class.iter().map(|(_, v)| v.clone()).sum();
        assert!(total.approx_eq(&all.total, 1e-20), "{name}");
        assert!(all.total.approx_eq(&tv_state_sum(&tri, &table), 1e-20), "{name}");
        if tri.cohomology().rank() == 1 {
            for (h, v) in &all.by_class {
                let oracle = spin_pairing(&m, &h.coords, &table).unwrap();
                assert!(v.approx_eq(&oracle, 1e-18), "{name} h={}: {v} vs {oracle}", h.bits());
            }
        }
    }
}
