//! Regenerate the JSON fixtures under `fixtures/`.
//!
//! `cargo run -p gl11-cli --example make_fixtures`

use std::path::Path;

use gl11_cli::formats::{
    ConnectionJson, FatGraphJson, HiggsFieldJson, LocalFunctionJson, MetricJson, NerveJson, SystemJson,
    TransitionJson,
};
use gl11_core::cech::{Mode, Nerve, TransitionData};
use gl11_core::fatgraph::{FatGraph, GraphConnection, RealForm};
use gl11_core::hitchin::{hitchin_solution, LocalFunction};
use gl11_core::integrable::ParabolicData;
use gl11_core::{ConjugationTable, GrassmannElement, GroupCoords};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

fn write(dir: &Path, name: &str, value: &impl Serialize) {
    let text = serde_json::to_string_pretty(value).unwrap() + "\n";
    std::fs::write(dir.join(name), text).unwrap();
}

fn th(n: u32, i: usize) -> GrassmannElement {
    GrassmannElement::generator(n, i).unwrap()
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir).unwrap();
    let n = 4;
    let zero = GrassmannElement::zero(n);

    let triangle = Nerve::triangle();
    write(&dir, "triangle_nerve.json", &NerveJson::from_nerve(&triangle));
    let trivial = TransitionData::cocycle_from(&triangle, n, Mode::Sl, |_, _| GroupCoords::identity(n)).unwrap();
    write(&dir, "triangle_zero.json", &TransitionJson::from_data(&trivial));

    // free edges carry odd parts whose product feeds h on the derived edge
    let genus_one = Nerve::genus_one();
    write(&dir, "genus1_nerve.json", &NerveJson::from_nerve(&genus_one));
    let data = TransitionData::cocycle_from(&genus_one, n, Mode::Sl, |i, j| {
        let (alpha, beta) = match (i, j) {
            (0, 1) => (th(n, 1), th(n, 3).scale(0.5)),
            (1, 2) => (th(n, 3).scale(-1.0), th(n, 2)),
            _ => (th(n, 4).scale(0.25), zero.clone()),
        };
        let h = GrassmannElement::scalar(n, 0.1 * (i + 2 * j) as f64);
        GroupCoords::sl(h, alpha, beta).unwrap()
    })
    .unwrap();
    write(&dir, "genus1_transitions.json", &TransitionJson::from_data(&data));
    let mut dropped = data.clone();
    let (g01, g12) = (data.coords(0, 1).unwrap(), data.coords(1, 2).unwrap());
    let mut g02 = data.coords(0, 2).unwrap();
    g02.h = &g01.h + &g12.h;
    dropped.set_edge(0, 2, g02).unwrap();
    write(&dir, "genus1_no_quadratic.json", &TransitionJson::from_data(&dropped));

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let planar = FatGraph::theta_planar();
    write(&dir, "theta_planar.json", &FatGraphJson::from_graph(&planar));
    let conn = GraphConnection::random(planar.clone(), RealForm::Sl, &mut rng, n);
    write(&dir, "theta_planar_connection.json", &ConnectionJson::from_connection(&conn));
    let flat = GraphConnection::random_puncture_trivial(planar, RealForm::Sl, &mut rng, n);
    write(&dir, "theta_planar_trivial_punctures.json", &ConnectionJson::from_connection(&flat));
    let torus = FatGraph::k4_torus();
    write(&dir, "k4_torus.json", &FatGraphJson::from_graph(&torus));

    let mono = |p, q, x: GrassmannElement| LocalFunction::monomial(p, q, x).unwrap();
    let rho_h = mono(1, 0, th(n, 1));
    let rho_a = mono(0, 2, th(n, 2).scale(0.5));
    let v_h = mono(2, 0, GrassmannElement::scalar(n, 0.3));
    let v_a = mono(0, 1, GrassmannElement::scalar(n, -0.2));
    let delta = mono(1, 0, th(n, 3));
    let gamma = mono(0, 0, th(n, 4).scale(2.0));
    let table = ConjugationTable::half_split(n);
    let m = hitchin_solution(&rho_h, &rho_a, &v_h, &v_a, &delta, &gamma, &table).unwrap();
    let metric = MetricJson {
        n,
        table: None,
        u: LocalFunctionJson::from_function(&m.u),
        rho: LocalFunctionJson::from_function(&m.rho),
    };
    write(&dir, "hitchin_metric.json", &metric);
    let higgs = HiggsFieldJson {
        n,
        a: LocalFunctionJson::from_function(&mono(1, 0, GrassmannElement::scalar(n, 1.0))),
        delta: LocalFunctionJson::from_function(&delta),
        gamma: LocalFunctionJson::from_function(&gamma),
    };
    write(&dir, "hitchin_higgs.json", &higgs);

    let c = |re, im| Complex64::new(re, im);
    let p = ParabolicData::new(
        vec![c(0.0, 0.0), c(1.0, 0.5), c(-0.5, 1.0)],
        vec![c(1.0, 0.0), c(-0.5, 0.2), c(0.3, -0.7)],
        vec![c(0.5, 0.0), c(1.5, 0.0), c(-0.8, 0.1)],
    )
    .unwrap();
    write(&dir, "system3.json", &SystemJson::from_data(&p, 1.0));
}
