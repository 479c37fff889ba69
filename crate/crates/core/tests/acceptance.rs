//! End-to-end acceptance checks. Every criterion runs, prints one PASS/FAIL
//! line and the test fails if any of them failed.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use simplicial::bistellar::{
    apply_move, certify_manifold, enumerate_moves, reduce_search, SearchConfig, SearchStatus,
    SphereVerdict, SplitMix64,
};
use simplicial::complex::StandardKind;
use simplicial::datasets::{build_action, cp3_30_naming, load_dataset, BuiltinAction};
use simplicial::homology::is_orientable;
use simplicial::isomorphism::{are_isomorphic, automorphism_group, DEFAULT_NODE_BUDGET};
use simplicial::{
    check_action, homology, orbit_expand, parse_group_spec, quotient, Complex, Group, Ring,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn complex(name: &str) -> Complex {
    load_dataset(name).unwrap().complex().unwrap()
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn histogram(lengths: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &l in lengths {
        *h.entry(l).or_insert(0) += 1;
    }
    h
}

const F124: [usize; 7] = [124, 1908, 11740, 34140, 50532, 36876, 10536];
const F30: [usize; 7] = [30, 362, 2066, 5810, 8470, 6146, 1756];
const F18: [usize; 7] = [18, 153, 783, 2110, 3021, 2177, 622];

fn expansion_124() -> Outcome {
    let ds = load_dataset("s2s2s2_124").map_err(|e| e.to_string())?;
    let spec = ds.orbit_spec().unwrap();
    let t = Instant::now();
    let e = orbit_expand(&spec.reps, &spec.group).map_err(|e| e.to_string())?;
    let took = t.elapsed();
    let h = histogram(&e.orbit_lengths);
    ensure!(
        e.complex.facets().len() == 10536,
        "{} facets",
        e.complex.facets().len()
    );
    ensure!(
        h == BTreeMap::from([(24, 4), (72, 145)]),
        "orbit lengths {h:?}"
    );
    ensure!(
        e.complex.f_vector().counts == F124,
        "f = {}",
        e.complex.f_vector()
    );
    ensure!(took < Duration::from_secs(10), "took {}", secs(took));
    Ok(format!(
        "10536 facets = 72x145 + 24x4, f = {}, {}",
        e.complex.f_vector(),
        secs(took)
    ))
}

fn expansion_30() -> Outcome {
    let ds = load_dataset("cp3_30").map_err(|e| e.to_string())?;
    let spec = ds.orbit_spec().unwrap();
    let e = orbit_expand(&spec.reps, &spec.group).map_err(|e| e.to_string())?;
    let h = histogram(&e.orbit_lengths);
    ensure!(
        e.complex.facets().len() == 1756,
        "{} facets",
        e.complex.facets().len()
    );
    ensure!(
        e.complex.f_vector().counts == F30,
        "f = {}",
        e.complex.f_vector()
    );
    ensure!(
        h == BTreeMap::from([(4, 4), (12, 145)]),
        "orbit lengths {h:?}"
    );
    Ok(format!("1756 facets, f = {}", e.complex.f_vector()))
}

fn goodness_and_quotient() -> Outcome {
    let t = Instant::now();
    let x = complex("s2s2s2_124");
    let g = build_action(BuiltinAction::S3OnV124)
        .on_table(x.vertices())
        .map_err(|e| e.to_string())?;
    let report = check_action(&x, &g).map_err(|e| e.to_string())?;
    ensure!(
        report.is_good && report.is_pure,
        "pure {} good {}",
        report.is_pure,
        report.is_good
    );
    ensure!(
        report.violation_count == 0,
        "{} violations",
        report.violation_count
    );
    let naming = cp3_30_naming();
    let q = quotient(&x, &g, Some(&naming)).map_err(|e| e.to_string())?;
    let target = complex("cp3_30");
    ensure!(
        are_isomorphic(&q.complex, &target).is_some(),
        "quotient not isomorphic to cp3_30"
    );
    let identical = q.complex.render() == target.render();
    let took = t.elapsed();
    ensure!(took < Duration::from_secs(120), "took {}", secs(took));
    Ok(format!(
        "good with 0 violations, quotient isomorphic to cp3_30 (identical under the naming: {identical}), {}",
        secs(took)
    ))
}

fn euler_characteristics() -> Outcome {
    let got: Vec<i64> = ["s2s2s2_124", "cp3_30", "cp3_18"]
        .iter()
        .map(|n| complex(n).euler_characteristic())
        .collect();
    ensure!(got == [8, 4, 4], "got {got:?}");
    Ok(format!("chi = {got:?}"))
}

const A_BALL: [&str; 7] = [
    "a1 a2 a3 a4 a5 a7 a8",
    "a1 a2 a3 a4 a5 a7 a9",
    "a1 a2 a3 a4 a5 a8 a9",
    "a1 a2 a3 a4 a6 a7 a8",
    "a1 a2 a3 a4 a6 a7 a9",
    "a1 a2 a3 a4 a6 a8 a9",
    "a1 a2 a3 a5 a6 a7 a9",
];

fn cp3_18_profile() -> Outcome {
    let x = complex("cp3_18");
    ensure!(x.f_vector().counts == F18, "f = {}", x.f_vector());
    ensure!(
        x.neighborliness() == 2,
        "neighborliness {}",
        x.neighborliness()
    );
    ensure!(
        x.f_vector().counts[1] == 18 * 17 / 2,
        "f1 = {}",
        x.f_vector().counts[1]
    );
    let aut = automorphism_group(&x, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?;
    ensure!(aut.order == 1, "automorphism order {}", aut.order);
    let a: Vec<String> = (1..=9).map(|i| format!("a{i}")).collect();
    let b: Vec<String> = (1..=9).map(|i| format!("b{i}")).collect();
    let ia = x.induced_by_labels(&a).map_err(|e| e.to_string())?;
    let got: BTreeSet<String> = ia.label_facets().iter().map(|f| f.join(" ")).collect();
    let want: BTreeSet<String> = A_BALL.iter().map(|s| s.to_string()).collect();
    ensure!(got == want, "induced a-facets {got:?}");
    let ib = x.induced_by_labels(&b).map_err(|e| e.to_string())?;
    ensure!(
        ib.f_vector().counts == [9, 36, 84, 90, 36],
        "induced b f = {}",
        ib.f_vector()
    );
    ensure!(
        ib.neighborliness() == 3,
        "b neighborliness {}",
        ib.neighborliness()
    );
    Ok("f exact, 2-neighborly, trivial automorphism group, a-ball has the 7 listed facets, b-part (9,36,84,90,36) 3-neighborly".into())
}

/// Betti numbers of a product from those of the factors.
fn kunneth(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn homology_profiles() -> Outcome {
    let expect = [1usize, 0, 3, 0, 3, 0, 1];
    let t = Instant::now();
    let h18 = homology(&complex("cp3_18"), Ring::Z).map_err(|e| e.to_string())?;
    let t18 = t.elapsed();
    ensure!(
        h18.betti == [1, 0, 1, 0, 1, 0, 1],
        "cp3_18 betti {:?}",
        h18.betti
    );
    ensure!(
        h18.torsion.iter().all(Vec::is_empty),
        "cp3_18 torsion {:?}",
        h18.torsion
    );
    ensure!(t18 < Duration::from_secs(60), "cp3_18 took {}", secs(t18));

    let x = complex("s2s2s2_124");
    let t = Instant::now();
    for ring in [Ring::Gf2, Ring::Gf3, Ring::Gf5, Ring::Q] {
        let h = homology(&x, ring).map_err(|e| e.to_string())?;
        ensure!(h.betti == expect, "{ring}: {:?}", h.betti);
    }
    let t124 = t.elapsed();
    ensure!(
        t124 < Duration::from_secs(300),
        "124-complex took {}",
        secs(t124)
    );

    // the oracle: a product of three tetrahedron boundaries, built directly
    let s2 = Complex::standard(StandardKind::Sphere, 2).unwrap();
    let cube = s2
        .staircase_product_default(&s2)
        .and_then(|p| p.staircase_product_default(&s2))
        .map_err(|e| e.to_string())?;
    let one = homology(&s2, Ring::Z).map_err(|e| e.to_string())?.betti;
    let predicted = kunneth(&kunneth(&one, &one), &one);
    let oracle = homology(&cube, Ring::Z).map_err(|e| e.to_string())?;
    ensure!(predicted == expect, "Kunneth gives {predicted:?}");
    ensure!(
        oracle.betti == expect,
        "staircase product betti {:?}",
        oracle.betti
    );
    ensure!(
        oracle.torsion.iter().all(Vec::is_empty),
        "staircase product has torsion"
    );
    Ok(format!(
        "cp3_18/Z (1,0,1,0,1,0,1) torsion-free in {}; 124-complex over gf2, gf3, gf5, q (1,0,3,0,3,0,1) in {}; staircase oracle agrees",
        secs(t18),
        secs(t124)
    ))
}

fn pseudomanifolds() -> Outcome {
    for name in ["s2s2s2_124", "cp3_30", "cp3_18"] {
        let x = complex(name);
        let r = x.pseudomanifold_check();
        ensure!(r.pure && r.closed && r.strongly_connected, "{name}: {r:?}");
        ensure!(
            is_orientable(&x).map_err(|e| e.to_string())?,
            "{name} not orientable"
        );
    }
    Ok("all three pure, closed, strongly connected and orientable".into())
}

fn manifold_certificate() -> Outcome {
    let x = complex("cp3_18");
    let cfg = SearchConfig {
        max_moves: Some(10_000),
        ..SearchConfig::with_seed(1)
    };
    let t = Instant::now();
    let r = certify_manifold(&x, &cfg).map_err(|e| e.to_string())?;
    let took = t.elapsed();
    ensure!(r.links.len() == 18, "{} links", r.links.len());
    for l in &r.links {
        ensure!(
            l.certificate.verdict == SphereVerdict::Sphere,
            "link of {}: {:?}",
            l.vertex,
            l.certificate.verdict
        );
        ensure!(
            l.certificate.moves <= 10_000,
            "link of {} used {} moves",
            l.vertex,
            l.certificate.moves
        );
    }
    ensure!(took < Duration::from_secs(600), "took {}", secs(took));
    let most = r.links.iter().map(|l| l.certificate.moves).max().unwrap();
    Ok(format!(
        "18 links reduce to the boundary of the 6-simplex, at most {most} moves each, {}",
        secs(took)
    ))
}

fn forced_endpoints() -> Outcome {
    let mut notes = Vec::new();
    for (d, n0, facets, target) in [(2i64, 14, 24, 4usize), (3, 30, 120, 5)] {
        let x = Complex::standard(StandardKind::Sphere, d)
            .unwrap()
            .barycentric_subdivision();
        ensure!(
            x.num_vertices() == n0 && x.facets().len() == facets,
            "subdivision f = {}",
            x.f_vector()
        );
        let cfg = SearchConfig {
            target_vertices: Some(target),
            max_seconds: Some(60.0),
            ..SearchConfig::with_seed(7)
        };
        let t = Instant::now();
        let a = reduce_search(&x, &cfg).map_err(|e| e.to_string())?;
        let took = t.elapsed();
        let b = reduce_search(&x, &cfg).map_err(|e| e.to_string())?;
        ensure!(
            a.status == SearchStatus::Target,
            "d = {d}: {:?} at {}",
            a.status,
            a.complex.f_vector()
        );
        ensure!(
            a.complex.is_standard_sphere(),
            "d = {d}: endpoint is not the simplex boundary"
        );
        ensure!(a.log == b.log, "d = {d}: two runs with one seed differ");
        ensure!(
            took < Duration::from_secs(60),
            "d = {d} took {}",
            secs(took)
        );
        notes.push(format!(
            "S{d}: {n0} -> {target} vertices in {} moves ({})",
            a.moves_applied,
            secs(took)
        ));
    }
    Ok(notes.join("; ") + ", deterministic")
}

fn desk_scale_reduction() -> Outcome {
    let x = complex("cp3_30");
    let cfg = SearchConfig {
        target_vertices: Some(26),
        max_seconds: Some(1800.0),
        homology_checkpoint: Some(100),
        ..SearchConfig::with_seed(1)
    };
    let t = Instant::now();
    let o = reduce_search(&x, &cfg).map_err(|e| e.to_string())?;
    let took = t.elapsed();
    ensure!(
        o.complex.num_vertices() <= 26,
        "stopped at {}",
        o.complex.f_vector()
    );
    ensure!(
        o.checkpoints == o.moves_applied / 100,
        "{} checkpoints for {} moves",
        o.checkpoints,
        o.moves_applied
    );
    let replayed = o.log.replay(&x).map_err(|e| e.to_string())?;
    ensure!(
        replayed == o.complex,
        "log replay does not reproduce the result"
    );
    let before = homology(&x, Ring::Gf2).map_err(|e| e.to_string())?.betti;
    let after = homology(&o.complex, Ring::Gf2)
        .map_err(|e| e.to_string())?
        .betti;
    ensure!(before == after, "GF(2) homology {before:?} -> {after:?}");
    Ok(format!(
        "30 -> {} vertices, f = {}, {} moves, {} homology checkpoints, log replays, {}",
        o.complex.num_vertices(),
        o.complex.f_vector(),
        o.moves_applied,
        o.checkpoints,
        secs(took)
    ))
}

fn move_round_trips(rng: &mut SplitMix64) -> Result<(), String> {
    let starts: Vec<Complex> = [(2i64, false), (3, false), (2, true), (3, true)]
        .iter()
        .map(|&(d, sub)| {
            let s = Complex::standard(StandardKind::Sphere, d).unwrap();
            if sub {
                s.barycentric_subdivision()
            } else {
                s
            }
        })
        .collect();
    for k in 0..100 {
        let mut y = starts[k % starts.len()].clone();
        let d = y.dim() as usize;
        for _ in 0..rng.below(6) {
            let ms = enumerate_moves(&y, None).unwrap();
            y = apply_move(&y, &ms[rng.below(ms.len())]).unwrap();
        }
        let ms = enumerate_moves(&y, None).unwrap();
        let m = &ms[rng.below(ms.len())];
        let z = apply_move(&y, m).map_err(|e| e.to_string())?;
        let back = apply_move(&z, &m.inverse(d)).map_err(|e| format!("inverse of {m}: {e}"))?;
        ensure!(
            back.render() == y.render(),
            "round trip {k} via {m} changed the complex"
        );
    }
    Ok(())
}

/// A free cyclic action shifting the copies of each of `orbits` vertex
/// classes, with random facet representatives across distinct classes.
fn random_action(rng: &mut SplitMix64) -> String {
    let orbits = 3 + rng.below(4);
    let m = 2 + rng.below(2);
    let label = |o: usize, r: usize| format!("o{o}c{r}");
    let mut text = String::from("GEN s:");
    for o in 0..orbits {
        let cycle: Vec<String> = (0..m).map(|r| label(o, r)).collect();
        text += &format!(" ({})", cycle.join(" "));
    }
    text += "\nREPS:\n";
    let dim = 1 + rng.below(2);
    for _ in 0..1 + rng.below(3) {
        let mut classes: Vec<usize> = (0..orbits).collect();
        let mut rep = Vec::new();
        for _ in 0..=dim {
            let o = classes.swap_remove(rng.below(classes.len()));
            rep.push(label(o, rng.below(m)));
        }
        text += &rep.join(" ");
        text.push('\n');
    }
    text
}

fn facet_orbit(g: &Group, f: &[u32]) -> BTreeSet<Vec<u32>> {
    g.elements()
        .unwrap()
        .iter()
        .map(|p| p.apply_face(f).to_vec())
        .collect()
}

fn quotient_fibres(rng: &mut SplitMix64) -> Result<(usize, usize), String> {
    let (mut pure, mut checked) = (0, 0);
    while pure < 20 {
        ensure!(
            checked < 5000,
            "only {pure} pure actions in {checked} trials"
        );
        let spec = parse_group_spec(&random_action(rng)).map_err(|e| e.to_string())?;
        let x = orbit_expand(&spec.reps, &spec.group)
            .map_err(|e| e.to_string())?
            .complex;
        let g = spec
            .group
            .on_table(x.vertices())
            .map_err(|e| e.to_string())?;
        let report = check_action(&x, &g).map_err(|e| e.to_string())?;
        checked += 1;
        ensure!(!report.is_good || report.is_pure, "good but impure action");
        if !report.is_pure {
            ensure!(
                quotient(&x, &g, None).is_err(),
                "impure action was quotiented"
            );
            continue;
        }
        pure += 1;
        let q = quotient(&x, &g, None).map_err(|e| e.to_string())?;
        let mut fibres: HashMap<Vec<String>, BTreeSet<Vec<u32>>> = HashMap::new();
        for f in x.facets() {
            let mut img: Vec<String> = x
                .labels_of(f)
                .iter()
                .map(|l| q.vertex_map[*l].clone())
                .collect();
            img.sort();
            img.dedup();
            ensure!(img.len() == f.len(), "facet {} collapses", x.render_face(f));
            fibres.entry(img).or_default().insert(f.to_vec());
        }
        let qf: BTreeSet<Vec<String>> = q.complex.label_facets().into_iter().collect();
        ensure!(
            qf == fibres.keys().cloned().collect(),
            "quotient facets are not the facet images"
        );
        for fibre in fibres.values() {
            let first = fibre.iter().next().unwrap();
            ensure!(
                *fibre == facet_orbit(&g, first),
                "a fibre is not a facet orbit"
            );
        }
    }
    Ok((pure, checked))
}

fn generator_sanity() -> Result<(), String> {
    let s3 = build_action(BuiltinAction::S3OnV124);
    let a4 = build_action(BuiltinAction::A4OnV124);
    let gen = |g: &Group, n: &str| g.generator(n).unwrap().clone();
    for (p, k) in [
        (gen(&a4, "alpha"), 3),
        (gen(&a4, "beta"), 3),
        (gen(&s3, "gamma"), 3),
        (gen(&s3, "delta"), 2),
    ] {
        ensure!(
            p.pow(k).is_identity() && !p.is_identity(),
            "generator of order {k} fails"
        );
    }
    let (es, ea) = (s3.elements().unwrap(), a4.elements().unwrap());
    ensure!(
        es.len() == 6 && ea.len() == 12,
        "orders {} and {}",
        es.len(),
        ea.len()
    );
    for p in es {
        for q in ea {
            ensure!(
                p.compose(q) == q.compose(p),
                "S3 and A4 elements do not commute"
            );
        }
    }
    let all = Group::new(
        s3.table().clone(),
        [s3.generators(), a4.generators()].concat(),
    );
    ensure!(
        all.order().unwrap() == 72,
        "joint order {}",
        all.order().unwrap()
    );
    Ok(())
}

fn relabelings(rng: &mut SplitMix64) -> Result<(), String> {
    let x = complex("cp3_18");
    let labels = x.vertices().labels().to_vec();
    for k in 0..50 {
        // Fisher-Yates
        let mut perm = labels.clone();
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.below(i + 1));
        }
        let y = x.relabel(&perm);
        let map = are_isomorphic(&x, &y).ok_or(format!("relabeling {k} not recognised"))?;
        // the automorphism group is trivial, so the isomorphism is forced
        for (v, (a, b)) in map.iter().enumerate() {
            ensure!(
                *a == labels[v] && *b == perm[v],
                "relabeling {k}: wrong image of {a}"
            );
        }
    }
    Ok(())
}

fn property_suites() -> Outcome {
    let mut rng = SplitMix64::new(20240611);
    move_round_trips(&mut rng)?;
    let (pure, checked) = quotient_fibres(&mut rng)?;
    generator_sanity()?;
    relabelings(&mut rng)?;
    Ok(format!(
        "100 move round trips; fibres = orbits on {pure} pure actions ({checked} checked, good implies pure); generators sane, order 72; 50 relabelings"
    ))
}

/// Writes to the real stdout, which the test harness does not capture, so
/// the summary shows up in plain `cargo test` output.
fn report(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("orbit expansion of the 124-vertex complex", expansion_124),
        ("orbit expansion of cp3_30", expansion_30),
        ("goodness and quotient", goodness_and_quotient),
        ("Euler characteristics", euler_characteristics),
        ("cp3_18 profile", cp3_18_profile),
        ("homology", homology_profiles),
        ("pseudomanifold and orientability", pseudomanifolds),
        ("manifold certification of cp3_18", manifold_certificate),
        ("forced flip endpoints", forced_endpoints),
        ("desk-scale reduction of cp3_30", desk_scale_reduction),
        ("property suites", property_suites),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let n = k + 1;
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(note) => report(&format!("criterion {n:>2}: PASS  {name}: {note}")),
            Err(why) => {
                report(&format!("criterion {n:>2}: FAIL  {name}: {why}"));
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
