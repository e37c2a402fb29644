//! End-to-end acceptance checks; prints one PASS or FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use common::*;
use horofan::coloured::{Colour, ColouredCone, ColouredConeData, ColouredFan, ColouredLattice};
use horofan::cone::Cone;
use horofan::criteria::{
    check_gms_morphism, check_isomorphism, cone_is_unstable, gms_fan, monoid_iso_check, GmsReason,
    UnstableMethod,
};
use horofan::fantastack::{
    build_fantastack, class_group, cox_beta, is_regular, root_stack_beta, FantastackInput,
};
use horofan::lattice::IntMatrix;
use horofan::stacky::{StackyColouredFan, StackyMap};
use num_bigint::BigInt;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lattice(rank: usize, colours: &[(&str, &[i64])]) -> ColouredLattice {
    ColouredLattice::new(
        rank,
        colours.iter().map(|(l, p)| Colour::new(*l, v(p))).collect(),
    )
    .unwrap()
}

fn fan(lattice: ColouredLattice, cones: &[(&[&[i64]], &[&str])]) -> ColouredFan {
    let data: Vec<ColouredConeData> = cones
        .iter()
        .map(|(g, c)| ColouredConeData {
            generators: g.iter().map(|x| v(x)).collect(),
            colours: c.iter().map(|s| s.to_string()).collect(),
        })
        .collect();
    ColouredFan::new(lattice, &data).unwrap()
}

fn stabilizers() -> Outcome {
    let cases: [(usize, usize, &[i64], &str); 4] = [
        (1, 1, &[2], "μ₂ (rank 0, torsion [2])"),
        (1, 2, &[1, -1], "G_m (rank 1, torsion [])"),
        (2, 2, &[2, 1, 0, 1], "μ₂ (rank 0, torsion [2])"),
        (1, 2, &[1, 1], "G_m (rank 1, torsion [])"),
    ];
    for (rows, cols, entries, expected) in cases {
        let beta = IntMatrix::from_i64(rows, cols, entries).unwrap();
        let s = StackyColouredFan::new(ColouredFan::trivial(cols), beta.clone()).unwrap();
        let got = s.k_beta().to_string();
        ensure(got == expected, || {
            format!("beta {beta}: got {got}, expected {expected}")
        })?;
    }
    for (name, expected) in [
        ("ex3_a2z2", "μ₂ (rank 0, torsion [2])"),
        ("ex3_p2", "G_m (rank 1, torsion [])"),
        ("ex3_sl3_beta21_01", "μ₂ (rank 0, torsion [2])"),
        ("ex3_sl3_beta11", "G_m (rank 1, torsion [])"),
    ] {
        let got = load_fan(name).k_beta().to_string();
        ensure(got == expected, || format!("{name}: got {got}"))?;
    }
    Ok("4 matrices and 4 golden documents".into())
}

fn gms_quadrant() -> Outcome {
    let r = gms_fan(&load_fan("ex6_2")).unwrap();
    let tau = ColouredCone::new(
        &load_fan("ex6_2").fan().lattice().clone(),
        Cone::from_generators(2, &[v(&[0, 1])]).unwrap(),
        BTreeSet::from(["a2".to_string()]),
    )
    .unwrap();
    let expected = fan(lattice(1, &[("a1", &[1])]), &[(&[&[1]], &[])]);
    ensure(r.exists && r.reason == GmsReason::Ok, || {
        format!("exists {} reason {}", r.exists, r.reason)
    })?;
    ensure(r.maximal_unstable.as_ref() == Some(&tau), || {
        format!("maximal unstable {:?}", r.maximal_unstable)
    })?;
    ensure(r.gms_fan.as_ref() == Some(&expected), || {
        format!("fan {:?}", r.gms_fan)
    })?;
    Ok("(Cone(e1), {}) on Z with colour a1".into())
}

fn gms_two_cones() -> Outcome {
    let r = gms_fan(&load_fan("ex6_3")).unwrap();
    let expected = fan(
        lattice(1, &[("a1", &[1]), ("a2", &[-1])]),
        &[(&[&[1]], &["a1"]), (&[&[-1]], &[])],
    );
    ensure(r.exists, || format!("reason {}", r.reason))?;
    ensure(r.gms_fan.as_ref() == Some(&expected), || {
        format!("fan {:?}", r.gms_fan)
    })?;
    Ok("(Cone(e1), {a1}), (Cone(-e1), {}) with colour points 1 and -1".into())
}

fn gms_missing() -> Outcome {
    let r = gms_fan(&load_fan("ex6_1")).unwrap();
    ensure(
        !r.exists && r.reason == GmsReason::NoUniqueMaxUnstable,
        || format!("exists {} reason {}", r.exists, r.reason),
    )?;
    Ok(format!(
        "{} unstable cones, none maximal",
        r.unstable_cones.len()
    ))
}

fn golden_fantastacks() -> Vec<(&'static str, FantastackInput)> {
    let f51 = load_fan("ex5_1").fan().clone();
    let f52 = load_fan("ex5_2").fan().clone();
    let f53 = load_fan("ex5_3").fan().clone();
    vec![
        (
            "ex5_1",
            FantastackInput::with_extra_columns(f51, &[v(&[1, 0]), v(&[1, 1]), v(&[0, 2])])
                .unwrap(),
        ),
        ("ex5_2", cox_beta(&f52).unwrap()),
        (
            "ex5_3",
            FantastackInput::with_extra_columns(f53, &[v(&[2, 2])]).unwrap(),
        ),
    ]
}

fn fantastacks() -> Outcome {
    let built: Vec<StackyColouredFan> = golden_fantastacks()
        .iter()
        .map(|(_, fi)| build_fantastack(fi).unwrap())
        .collect();
    let expected = [
        fan(
            lattice(4, &[("a", &[1, 0, 0, 0])]),
            &[(&[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]], &[])],
        ),
        fan(
            lattice(3, &[("a1", &[1, 0, 0]), ("a2", &[0, 1, 0])]),
            &[
                (&[&[1, 0, 0], &[0, 1, 0]], &["a1", "a2"]),
                (&[&[0, 1, 0], &[0, 0, 1]], &["a2"]),
                (&[&[1, 0, 0], &[0, 0, 1]], &["a1"]),
            ],
        ),
        fan(
            lattice(3, &[("a1", &[1, 0, 0]), ("a2", &[0, 1, 0])]),
            &[
                (&[&[1, 0, 0], &[0, 0, 1]], &["a1"]),
                (&[&[0, 1, 0], &[0, 0, 1]], &["a2"]),
            ],
        ),
    ];
    let betas = [
        IntMatrix::from_i64(2, 4, &[1, 1, 1, 0, 0, 0, 1, 2]).unwrap(),
        IntMatrix::from_i64(2, 3, &[1, 0, -1, 0, 1, -1]).unwrap(),
        IntMatrix::from_i64(2, 3, &[1, 0, 2, 0, 1, 2]).unwrap(),
    ];
    for (i, s) in built.iter().enumerate() {
        ensure(s.fan() == &expected[i], || {
            format!("example {i}: {:?}", s.fan())
        })?;
        ensure(s.beta() == &betas[i], || {
            format!("example {i}: beta {}", s.beta())
        })?;
    }
    let root = root_stack_beta(load_fan("ex5_3").fan(), &v(&[1, 1]), &BigInt::from(2)).unwrap();
    ensure(root.beta() == &betas[2], || {
        format!("root stack beta {}", root.beta())
    })?;
    Ok("three golden fantastacks match".into())
}

fn cox_collapse() -> Outcome {
    let f = load_fan("ex5_2").fan().clone();
    ensure(is_regular(&f), || "fan is not regular".into())?;
    let v = check_isomorphism(&fantastack_map(&cox_beta(&f).unwrap())).unwrap();
    ensure(v.overall(), || format!("{v:?}"))?;
    Ok("regular and the Cox map is an isomorphism".into())
}

fn fantastack_gms() -> Outcome {
    let mut inputs = golden_fantastacks();
    let mut r = rng(7);
    for _ in 0..200 {
        inputs.push(("random", random_cf_input(&mut r, 3, 6, 3)));
    }
    for (name, fi) in &inputs {
        let v = check_gms_morphism(&fantastack_map(fi)).unwrap();
        ensure(v.overall(), || {
            format!("{name} with beta {}: {v:?}", fi.beta())
        })?;
    }
    Ok(format!("{} inputs, zero failures", inputs.len()))
}

fn unstable_agreement() -> Outcome {
    let mut r = rng(11);
    let mut unstable = 0;
    for i in 0..500 {
        let dim = r.gen_range(1..=4);
        let rows = r.gen_range(0..=dim);
        let tau = random_cone(&mut r, dim, 3, dim + 1);
        let beta = random_matrix(&mut r, rows, dim, 3);
        let verdicts: Vec<bool> = UnstableMethod::ALL
            .iter()
            .map(|&m| cone_is_unstable(&beta, &tau, m).unwrap())
            .collect();
        ensure(verdicts.iter().all(|&x| x == verdicts[0]), || {
            format!("pair {i}: {tau} under {beta} gives {verdicts:?}")
        })?;
        unstable += usize::from(verdicts[0]);
    }
    Ok(format!(
        "500 pairs, {unstable} unstable, zero disagreements"
    ))
}

fn monoid_oracle() -> Outcome {
    let mut r = rng(13);
    let mut isos = 0;
    let mut checked = 0;
    while checked < 200 {
        let dim = r.gen_range(1..=3);
        let rows = r.gen_range(1..=3);
        let k = r.gen_range(1..=dim + 1);
        let gens: Vec<_> = (0..k)
            .map(|_| loop {
                let g = random_vector(&mut r, dim, 0, 3);
                if g.iter().any(|x| x != &BigInt::from(0)) {
                    break g;
                }
            })
            .collect();
        let sigma = Cone::from_generators(dim, &gens).unwrap();
        let phi = random_matrix(&mut r, rows, dim, 3);
        let target = sigma.image(&phi).unwrap();
        if !target.is_strongly_convex() {
            continue;
        }
        checked += 1;
        let lib = monoid_iso_check(&phi, &sigma, &target).unwrap();
        let basis = independent_subset(&gens);
        let images: Vec<_> = basis.iter().map(|g| apply(&phi, g)).collect();
        let injective = rank(&images) == basis.len();
        let oracle = injective && saturation_index(&images) == saturation_index(&basis);
        let points = box_points(&gens, dim, 4, 8);
        let mut seen: Vec<(Vec<BigInt>, Vec<BigInt>)> =
            points.iter().map(|p| (apply(&phi, p), p.clone())).collect();
        seen.sort();
        let collision = seen
            .windows(2)
            .any(|w| w[0].0 == w[1].0 && w[0].1 != w[1].1);
        ensure(lib == oracle && !(oracle && collision), || {
            format!(
                "{sigma} under {phi}: library {lib}, oracle {oracle}, box collision {collision}"
            )
        })?;
        isos += usize::from(lib);
    }
    Ok(format!(
        "200 pairs, {isos} isomorphisms, zero disagreements"
    ))
}

fn product_theorem() -> Outcome {
    let maps: Vec<StackyMap> = GOLDEN_MAPS.iter().map(|(n, _, _)| load_map(n)).collect();
    let verdicts: Vec<(bool, bool)> = maps
        .iter()
        .map(|m| {
            (
                check_isomorphism(m).unwrap().overall(),
                check_gms_morphism(m).unwrap().overall(),
            )
        })
        .collect();
    for (i, (_, iso, gms)) in GOLDEN_MAPS.iter().enumerate() {
        ensure(verdicts[i] == (*iso, *gms), || {
            format!("{}: verdicts {:?}", GOLDEN_MAPS[i].0, verdicts[i])
        })?;
    }
    for (i, a) in maps.iter().enumerate() {
        for (j, b) in maps.iter().enumerate() {
            let p = a.product(b).map_err(|e| format!("product {i}x{j}: {e}"))?;
            let iso = check_isomorphism(&p).unwrap().overall();
            let gms = check_gms_morphism(&p).unwrap().overall();
            ensure(iso == (verdicts[i].0 && verdicts[j].0), || {
                format!("product {i}x{j}: isomorphism {iso}")
            })?;
            ensure(gms == (verdicts[i].1 && verdicts[j].1), || {
                format!("product {i}x{j}: good moduli space {gms}")
            })?;
        }
    }
    Ok("16 products agree with the factors".into())
}

fn decolouration_uniqueness() -> Outcome {
    let maps: Vec<StackyMap> = GOLDEN_MAPS.iter().map(|(n, _, _)| load_map(n)).collect();
    let mut candidates = maps.clone();
    for a in &maps {
        for b in &maps {
            candidates.push(a.product(b).unwrap());
        }
    }
    let mut passing = 0;
    for m in &candidates {
        if !check_isomorphism(m).unwrap().overall() {
            continue;
        }
        passing += 1;
        let d = m
            .decolour()
            .map_err(|e| format!("decolouration is not a map: {e}"))?;
        ensure(check_isomorphism(&d).unwrap().overall(), || {
            format!("decolouration of {:?} fails", m.lattice_map())
        })?;
    }
    ensure(passing > 0, || "no golden isomorphisms".into())?;
    Ok(format!("{passing} isomorphisms stay isomorphisms"))
}

fn class_group_rank() -> Outcome {
    let mut fans: Vec<ColouredFan> = GOLDEN_FANS
        .iter()
        .map(|n| load_fan(n).fan().clone())
        .collect();
    let mut r = rng(17);
    for _ in 0..200 {
        fans.push(random_spanning_fan(&mut r, 3, 3));
    }
    for f in &fans {
        let g = class_group(f).map_err(|e| format!("{e} for {f:?}"))?;
        let mut rows: Vec<Vec<BigInt>> = f
            .lattice()
            .colours()
            .iter()
            .map(|c| c.point.clone())
            .collect();
        let rays = f.non_coloured_rays();
        rows.extend(rays.iter().cloned());
        let expected = f.lattice().colours().len() + rays.len() - f.rank();
        ensure(g.free_rank() == expected, || {
            format!("free rank {} instead of {expected}", g.free_rank())
        })?;
        ensure(rows.len() - rank(&rows) == expected, || {
            "rank oracle disagrees".into()
        })?;
    }
    Ok(format!("{} fans", fans.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("stabilizer groups of the four examples", stabilizers),
        ("good moduli space of the quadrant example", gms_quadrant),
        ("good moduli space of the two-cone example", gms_two_cones),
        ("no good moduli space for the projective line", gms_missing),
        ("golden fantastack fans", fantastacks),
        ("regular Cox construction is an isomorphism", cox_collapse),
        (
            "fantastack maps are good moduli space morphisms",
            fantastack_gms,
        ),
        ("three unstable-cone tests agree", unstable_agreement),
        ("monoid isomorphism matches the oracle", monoid_oracle),
        ("product maps respect the verdicts", product_theorem),
        (
            "decolouration preserves isomorphisms",
            decolouration_uniqueness,
        ),
        ("class group rank identity", class_group_rank),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
