//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its headline numbers (run with `-- --nocapture` to see them).

use std::collections::{HashMap, HashSet};
use std::f64::consts::PI;
use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use tsolve_core::cheby::IntPoly;
use tsolve_core::codes;
use tsolve_core::exec;
use tsolve_core::families;
use tsolve_core::lp::{
    a_symmetric_poly, build_a_generic, build_a_prime, build_a_symmetric, build_a_symmetric_with,
    cyclic_orbit_table, solve_feasibility, state_from_solution, symmetric_orbit_table,
    threshold_scan, ScanOptions,
};
use tsolve_core::orbits::{
    burnside_bounds, cyclic_string_orbit_count, generate_transitive_set, orbits_bitstrings,
    orbits_bitstrings_generic, orbits_pairs, orbits_pairs_generic, OrbitTable, PairOrbit,
};
use tsolve_core::pauli::PauliOperator;
use tsolve_core::perm::{GroupKind, Permutation, PermutationGroup, SwapElement, TildeGroupElement};
use tsolve_core::sim::{verify_ts_code, verify_ts_state, DiagonalPhaseOp};
use tsolve_core::stab::projected_anticommutator_check;
use tsolve_core::{Angle, BitString, StateVector, Trajectory, TrajectorySet};

fn pass(id: u32, elapsed: std::time::Duration, limit_s: f64, detail: &str) {
    let secs = elapsed.as_secs_f64();
    println!("PASS criterion {id:2}: {detail} ({secs:.2}s)");
    assert!(
        secs < limit_s,
        "criterion {id} exceeded its {limit_s}s budget: {secs:.2}s"
    );
}

fn pair_partition(orbits: &[PairOrbit]) -> HashSet<Vec<(u64, u64)>> {
    orbits
        .iter()
        .map(|o| {
            o.members
                .as_ref()
                .expect("materialized members")
                .iter()
                .map(|(a, b)| (a.mask(), b.mask()))
                .collect()
        })
        .collect()
}

#[test]
fn acceptance_01_symmetric_orbit_counts() {
    let started = Instant::now();
    for n in 1..=16usize {
        let group = PermutationGroup::symmetric(n).unwrap();
        let strings = orbits_bitstrings(&group, n).unwrap();
        assert_eq!(strings.len(), n / 2 + 1, "N formula at n={n}");
        for m in 0..=n {
            let ts = generate_transitive_set(&group, m).unwrap();
            let pairs = orbits_pairs(&group, &ts).unwrap();
            let expected = if m <= n / 2 { m + 1 } else { n - m + 1 };
            assert_eq!(pairs.len(), expected, "M formula at n={n} m={m}");
        }
    }
    for n in 1..=10usize {
        let group = PermutationGroup::symmetric(n).unwrap();
        let fast: Vec<Vec<u64>> = orbits_bitstrings(&group, n)
            .unwrap()
            .into_iter()
            .map(|o| o.members.unwrap())
            .collect();
        let slow: Vec<Vec<u64>> = orbits_bitstrings_generic(&group, n)
            .unwrap()
            .into_iter()
            .map(|o| o.members.unwrap())
            .collect();
        assert_eq!(fast, slow, "string fast path vs BFS at n={n}");
        for m in 0..=n {
            let ts = generate_transitive_set(&group, m).unwrap();
            let fast = orbits_pairs(&group, &ts).unwrap();
            let slow = orbits_pairs_generic(&group, &ts).unwrap();
            assert_eq!(
                pair_partition(&fast),
                pair_partition(&slow),
                "pair fast path vs BFS at n={n} m={m}"
            );
            assert_eq!(fast[0].representative.0, fast[0].representative.1);
            assert_eq!(slow[0].representative.0, slow[0].representative.1);
        }
    }
    pass(
        1,
        started.elapsed(),
        10.0,
        "symmetric orbit counts and BFS equivalence, n <= 16",
    );
}

#[test]
fn acceptance_02_cyclic_orbit_counts() {
    let started = Instant::now();
    let oeis = [1u64, 2, 2, 4, 4, 8, 10, 20, 30];
    for (i, &want) in oeis.iter().enumerate() {
        let n = i + 1;
        let group = PermutationGroup::cyclic(n).unwrap();
        assert_eq!(orbits_bitstrings(&group, n).unwrap().len() as u64, want);
        assert_eq!(cyclic_string_orbit_count(n), want);
    }
    for n in 1..=20usize {
        let group = PermutationGroup::cyclic(n).unwrap();
        let enumerated = orbits_bitstrings(&group, n).unwrap().len() as u64;
        assert_eq!(
            enumerated,
            cyclic_string_orbit_count(n),
            "divisor formula at n={n}"
        );
    }
    for n in 2..=16usize {
        let group = PermutationGroup::cyclic(n).unwrap();
        for m in [1, n / 2, n - 1] {
            if m == 0 || m == n {
                continue;
            }
            let ts = generate_transitive_set(&group, m).unwrap();
            let pairs = orbits_pairs(&group, &ts).unwrap();
            assert_eq!(pairs.len(), n / 2 + 1, "cyclic M at n={n} m={m}");
        }
    }
    pass(
        2,
        started.elapsed(),
        10.0,
        "cyclic necklace counts match OEIS prefix and divisor formula",
    );
}

#[test]
fn acceptance_03_half_filling_thresholds() {
    let started = Instant::now();
    let deltas: Vec<f64> = exec::map_indexed(11, |i| {
        let n = i + 2;
        let m = n / 2;
        let table = symmetric_orbit_table(n, m).unwrap();
        let scan = threshold_scan(
            &|theta| build_a_symmetric_with(&table, theta),
            &ScanOptions::default(),
        )
        .unwrap();
        let formula = (n as f64 - 1.0) * PI / n as f64;
        (scan.theta_star.expect("threshold exists") - formula).abs()
    });
    let worst = deltas.iter().cloned().fold(0.0, f64::max);
    assert!(
        worst < 1e-6,
        "worst half-filling threshold delta {worst:.3e}"
    );
    pass(
        3,
        started.elapsed(),
        60.0,
        &format!("half-filling thresholds, n = 2..=12, worst delta {worst:.1e}"),
    );
}

#[test]
fn acceptance_04_m1_thresholds() {
    let started = Instant::now();
    let deltas: Vec<f64> = exec::map_indexed(11, |i| {
        let n = i + 2;
        let table = symmetric_orbit_table(n, 1).unwrap();
        let scan = threshold_scan(
            &|theta| build_a_symmetric_with(&table, theta),
            &ScanOptions::default(),
        )
        .unwrap();
        let formula = families::threshold_sym_m1(n).unwrap();
        (scan.theta_star.expect("threshold exists") - formula).abs()
    });
    let worst = deltas.iter().cloned().fold(0.0, f64::max);
    assert!(worst < 1e-6, "worst m=1 threshold delta {worst:.3e}");
    pass(
        4,
        started.elapsed(),
        60.0,
        &format!("m = 1 thresholds, n = 2..=12, worst delta {worst:.1e}"),
    );
}

#[test]
fn acceptance_05_end_to_end_soundness() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut tables: HashMap<(bool, usize, usize), std::sync::Arc<OrbitTable>> = HashMap::new();
    let mut instances = Vec::new();
    let mut attempts = 0usize;
    while instances.len() < 200 {
        attempts += 1;
        assert!(attempts < 20_000, "rejection sampling stalled");
        let n = rng.gen_range(2..=10usize);
        let m = rng.gen_range(1..n);
        let cyclic = rng.gen_bool(0.5);
        let theta = Angle::new(rng.gen_range(0.0..=PI)).unwrap();
        let table = tables
            .entry((cyclic, n, m))
            .or_insert_with(|| {
                if cyclic {
                    cyclic_orbit_table(n, m).unwrap()
                } else {
                    symmetric_orbit_table(n, m).unwrap()
                }
            })
            .clone();
        let mat = if cyclic {
            build_a_generic(&table, theta).unwrap()
        } else {
            build_a_symmetric_with(&table, theta).unwrap()
        };
        let res = solve_feasibility(&mat, 1e-9).unwrap();
        if let Some(c) = res.c {
            instances.push((table, theta, c));
        }
    }
    let worst: Vec<(f64, f64)> = exec::map_indexed(instances.len(), |i| {
        let (table, theta, c) = &instances[i];
        let psi = state_from_solution(c, table, 1e-9).unwrap();
        let report = verify_ts_state(&psi, &table.trajectories, *theta, 1e-9).unwrap();
        assert!(
            report.is_ts,
            "instance {i} failed oracle: offdiag {:.3e}, diag {:.3e}",
            report.max_offdiag, report.max_diag_dev
        );
        (report.max_offdiag, report.max_diag_dev)
    });
    let max_off = worst.iter().map(|w| w.0).fold(0.0, f64::max);
    let max_diag = worst.iter().map(|w| w.1).fold(0.0, f64::max);
    pass(
        5,
        started.elapsed(),
        600.0,
        &format!(
            "200 feasible instances reconstructed and oracle-verified (worst offdiag {max_off:.1e}, diag {max_diag:.1e}, {attempts} samples)"
        ),
    );
}

#[test]
#[allow(clippy::needless_range_loop)]
fn acceptance_06_matrix_oracle_equivalence() {
    let started = Instant::now();
    for n in 1..=8usize {
        for m in 0..=n {
            let table = symmetric_orbit_table(n, m).unwrap();
            for step in 0..64 {
                let theta = Angle::new(PI * step as f64 / 63.0).unwrap();
                let fast = build_a_symmetric_with(&table, theta).unwrap();
                let slow = build_a_generic(&table, theta).unwrap();
                for (fr, sr) in fast.rows.iter().zip(&slow.rows) {
                    for (f, s) in fr.iter().zip(sr) {
                        assert!(
                            (f - s).abs() <= 1e-12 * f.abs().max(1.0),
                            "n={n} m={m} theta step {step}: {f} vs {s}"
                        );
                    }
                }
            }
        }
    }
    // Row mu of A' must be the symbolic (mu-1)-th derivative of row mu of A.
    for n in 1..=10usize {
        for m in 0..=n {
            let a_polys = a_symmetric_poly(n, m);
            let theta0 = Angle::pi_fraction(1, 2).unwrap(); // t = 0
            let theta1 = Angle::ZERO; // t = 1
            let ap0 = build_a_prime(n, m, theta0).unwrap();
            let ap1 = build_a_prime(n, m, theta1).unwrap();
            for mu in 1..ap0.num_rows() {
                for nu in 0..ap0.num_cols() {
                    let oracle = a_polys[mu][nu].nth_derivative(mu - 1);
                    assert!(oracle.degree().map_or(0, |d| d) <= 1);
                    // Affine coefficients recovered by evaluation.
                    let q0 = ap0.rows[mu][nu];
                    let q1 = ap1.rows[mu][nu] - q0;
                    assert_eq!(
                        q0.round() as i128,
                        oracle.coeff(0),
                        "n={n} m={m} mu={mu} nu={nu}"
                    );
                    assert_eq!(
                        q1.round() as i128,
                        oracle.coeff(1),
                        "n={n} m={m} mu={mu} nu={nu}"
                    );
                    assert!((q0 - q0.round()).abs() < 1e-6 && (q1 - q1.round()).abs() < 1e-6);
                }
            }
        }
    }
    pass(
        6,
        started.elapsed(),
        60.0,
        "closed-form matrix matches orbit sums; A' rows are symbolic derivatives",
    );
}

#[test]
#[allow(clippy::needless_range_loop)]
fn acceptance_07_derivative_ladder() {
    let started = Instant::now();
    let mut checked = 0usize;
    for n in 1..=10usize {
        for m in 0..=n {
            let a = a_symmetric_poly(n, m);
            let rows = a.len();
            let cols = a.first().map_or(0, Vec::len);
            for mu in 1..rows {
                for nu in 0..cols {
                    for j in 0..mu {
                        // (mu - j) A^(j)[mu] - mu A^(j)[mu-1] = (t-1) A^(j+1)[mu],
                        // exactly in integer polynomial arithmetic.
                        let lhs = a[mu][nu]
                            .nth_derivative(j)
                            .scaled((mu - j) as i128)
                            .sub(&a[mu - 1][nu].nth_derivative(j).scaled(mu as i128));
                        let rhs: IntPoly = a[mu][nu].nth_derivative(j + 1).mul_linear(-1, 1);
                        assert_eq!(lhs, rhs, "n={n} m={m} mu={mu} nu={nu} j={j}");
                        checked += 1;
                    }
                }
            }
        }
    }
    pass(
        7,
        started.elapsed(),
        60.0,
        &format!("derivative ladder exact for {checked} (n,m,mu,nu,j) cases"),
    );
}

#[test]
fn acceptance_08_code_fixtures() {
    let started = Instant::now();
    for fx in [
        codes::fixture_c4().unwrap(),
        codes::fixture_c6().unwrap(),
        codes::fixture_toric().unwrap(),
    ] {
        let report = codes::verify_fixture(&fx, 1e-9).unwrap();
        assert!(
            report.is_ts,
            "{} fixture: offdiag {:.3e}",
            fx.name, report.max_offdiag
        );
    }
    let ts = codes::toric_trajectories().unwrap();
    let theta = Angle::pi_fraction(1, 2).unwrap();
    let d1 = PauliOperator::x_on(8, &[3, 5, 6, 7]).unwrap();
    let v1 = vec![PauliOperator::z_on(8, &[3, 7]).unwrap().neg()];
    assert!(projected_anticommutator_check(&d1, ts.get(0), ts.get(1), theta, &v1).unwrap());
    let d2 = PauliOperator::x_on(8, &[4, 5, 6, 8]).unwrap();
    let v2 = vec![PauliOperator::z_on(8, &[4, 8]).unwrap().neg()];
    assert!(projected_anticommutator_check(&d2, ts.get(0), ts.get(3), theta, &v2).unwrap());
    pass(
        8,
        started.elapsed(),
        5.0,
        "C4, C6, toric states discriminate at pi/2; toric anticommutation reps hold",
    );
}

#[test]
fn acceptance_09_logical_code() {
    let started = Instant::now();
    for n in [3usize, 5, 7] {
        let mut ms = vec![1, n / 2];
        ms.dedup();
        for m in ms {
            let theta_star = if m == 1 {
                families::threshold_sym_m1(n).unwrap()
            } else {
                (n as f64 - 1.0) * PI / n as f64
            };
            let theta = Angle::new(theta_star).unwrap();
            let code = codes::build_cts_code(n, m, theta).unwrap();
            let basis = code.basis();
            let report = verify_ts_code(&basis, &code.trajectories, theta, 1e-9).unwrap();
            assert!(
                report.is_ts_code,
                "n={n} m={m}: offdiag {:.3e}, diag {:.3e}",
                report.max_offdiag, report.max_diag_dev
            );
            // X_L swaps the basis, Z_L phases |1_L>, and they anticommute.
            let x0 = code.x_l.apply(&code.zero_l).unwrap();
            assert!(x0.sub(&code.one_l).unwrap().norm() < 1e-9);
            let x1 = code.x_l.apply(&code.one_l).unwrap();
            assert!(x1.sub(&code.zero_l).unwrap().norm() < 1e-9);
            let z1 = codes::apply_logical_z(&code.one_l);
            assert!(z1.add(&code.one_l).unwrap().norm() < 1e-9);
            let z0 = codes::apply_logical_z(&code.zero_l);
            assert!(z0.sub(&code.zero_l).unwrap().norm() < 1e-9);
            for v in &basis {
                let xz = code.x_l.apply(&codes::apply_logical_z(v)).unwrap();
                let zx = codes::apply_logical_z(&code.x_l.apply(v).unwrap());
                assert!(
                    xz.add(&zx).unwrap().norm() < 1e-9,
                    "anticommutation on the code space"
                );
            }
        }
    }
    pass(
        9,
        started.elapsed(),
        10.0,
        "logical code passes for n = 3, 5, 7 at both m choices",
    );
}

#[test]
fn acceptance_10_concatenation() {
    let started = Instant::now();
    for n_prime in [2usize, 3] {
        let (out, report) = codes::repetition_demo(n_prime, 1e-9).unwrap();
        assert!(
            report.is_ts,
            "repetition n'={n_prime}: offdiag {:.3e}",
            report.max_offdiag
        );
        assert!((out.theta.theta() - PI / (2.0 * n_prime as f64)).abs() < 1e-15);
    }
    let demo = codes::steane_demo(1e-9).unwrap();
    assert!(demo.base.is_ts, "base 14-qubit Gram identity");
    assert_eq!(demo.errors_tested, 42);
    assert_eq!(
        demo.failures, 0,
        "worst corrected overlap {:.3e}",
        demo.worst_offdiag
    );
    pass(
        10,
        started.elapsed(),
        120.0,
        &format!(
            "repetition at pi/4 and pi/6; Steane 14-qubit sensor survives all {} single-qubit errors",
            demo.errors_tested
        ),
    );
}

#[test]
fn acceptance_11_group_property_suite() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x11);
    let random_perm = |n: usize, rng: &mut ChaCha8Rng| {
        let mut img: Vec<usize> = (1..=n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            img.swap(i, j);
        }
        Permutation::from_image_one_based(&img).unwrap()
    };
    let random_traj = |n: usize, rng: &mut ChaCha8Rng| -> Trajectory {
        let members: Vec<usize> = (1..=n).filter(|_| rng.gen_bool(0.5)).collect();
        Trajectory::from_members(n, &members).unwrap()
    };

    for round in 0..1000usize {
        let n = rng.gen_range(2..=8usize);

        // Group-action axioms for the combined elements on strings and pairs.
        let g = TildeGroupElement::new(rng.gen_bool(0.5), random_perm(n, &mut rng));
        let h = TildeGroupElement::new(rng.gen_bool(0.5), random_perm(n, &mut rng));
        let b = BitString::from_index(n, rng.gen_range(0..(1u64 << n))).unwrap();
        let pair = (random_traj(n, &mut rng), random_traj(n, &mut rng));
        let id = TildeGroupElement::identity(n);
        assert_eq!(id.act_bitstring(b), b);
        assert_eq!(id.act_pair(pair), pair);
        let gh = g.compose(&h);
        assert_eq!(gh.act_bitstring(b), g.act_bitstring(h.act_bitstring(b)));
        assert_eq!(gh.act_pair(pair), g.act_pair(h.act_pair(pair)));

        // sigma is a homomorphism from Pauli products to swap composition.
        let d1 = random_pauli(n, &mut rng);
        let d2 = random_pauli(n, &mut rng);
        assert_eq!(
            d1.mul(&d2).unwrap().sigma(),
            d1.sigma().compose(&d2.sigma())
        );

        // Pair degree is a permutation invariant (for equal-size pairs).
        let (ta, tb) = {
            let size = rng.gen_range(0..=n);
            let mut pool: Vec<usize> = (1..=n).collect();
            let mut pick = |rng: &mut ChaCha8Rng| {
                pool.shuffle(rng);
                Trajectory::from_members(n, &pool[..size]).unwrap()
            };
            (pick(&mut rng), pick(&mut rng))
        };
        let rho = random_perm(n, &mut rng);
        assert_eq!(
            ta.pair_degree(&tb).unwrap(),
            rho.act_trajectory(&ta)
                .pair_degree(&rho.act_trajectory(&tb))
                .unwrap()
        );
        assert_eq!(ta.pair_degree(&tb).unwrap(), tb.pair_degree(&ta).unwrap());

        // Permutation conjugation of operators: trajectory ops permute their
        // index, Pauli supports permute (A1.2 / A3.1).
        let pi = random_perm(n, &mut rng);
        let theta = Angle::new(rng.gen_range(0.0..=PI)).unwrap();
        let t = random_traj(n, &mut rng);
        let op = DiagonalPhaseOp::trajectory_phases(&t, theta, n).unwrap();
        let conj = DiagonalPhaseOp::trajectory_phases(&pi.act_trajectory(&t), theta, n).unwrap();
        let inv = pi.inverse();
        for probe in 0..4 {
            let idx = (probe * 37 + round as u64) % (1u64 << n);
            assert!((op.phase_at(inv.scatter_bits(idx)) - conj.phase_at(idx)).abs() < 1e-9);
        }
        assert_eq!(
            d1.conjugated_by_permutation(&pi).unwrap().sigma(),
            d1.sigma().permuted(&pi)
        );

        // Pauli conjugation of pair operators realizes the swap action:
        // (D R^(T,T') D^dag) phases at b equal R^{sigma(T,T')} at b ^ x.
        let t2 = random_traj(n, &mut rng);
        let pair_op = DiagonalPhaseOp::pair_op(&t, &t2, theta, n).unwrap();
        let (u, u2) = d1.sigma().act_pair((t, t2));
        let swapped = DiagonalPhaseOp::pair_op(&u, &u2, theta, n).unwrap();
        for probe in 0..4 {
            let idx = (probe * 53 + round as u64 * 29) % (1u64 << n);
            let lhs = pair_op.phase_at(idx ^ d1.sigma().mask());
            assert!((lhs - swapped.phase_at(idx)).abs() < 1e-9);
        }

        // Permutation conjugation of pair operators (Prop. on permutations).
        let permuted_pair =
            DiagonalPhaseOp::pair_op(&pi.act_trajectory(&t), &pi.act_trajectory(&t2), theta, n)
                .unwrap();
        for probe in 0..4 {
            let idx = (probe * 41 + round as u64 * 17) % (1u64 << n);
            let lhs = pair_op.phase_at(inv.scatter_bits(idx));
            assert!((lhs - permuted_pair.phase_at(idx)).abs() < 1e-9);
        }

        // Burnside bounds on a random transitive set (every tenth round).
        if round % 10 == 0 {
            let kind = rng.gen_range(0..3);
            let group = match kind {
                0 => PermutationGroup::symmetric(n).unwrap(),
                1 => PermutationGroup::cyclic(n).unwrap(),
                _ => {
                    let gens = vec![random_perm(n, &mut rng), random_perm(n, &mut rng)];
                    PermutationGroup::from_generators(n, gens, round as u64).unwrap()
                }
            };
            let m = rng.gen_range(0..=n);
            let ts = generate_transitive_set(&group, m).unwrap();
            let bounds = burnside_bounds(&group, &ts).unwrap();
            let pairs = orbits_pairs(&group, &ts).unwrap().len() as f64;
            let strings = orbits_bitstrings(&group, n).unwrap().len() as f64;
            assert!(pairs <= bounds.upper_m + 1e-9 && pairs >= bounds.lower_m - 1e-9);
            assert!(strings <= bounds.upper_n + 1e-9 && strings >= bounds.lower_n - 1e-9);
        }
    }

    // Composition law of the combined group on general swap subsets:
    // (s, pi) . (s', pi') = (s ^ pi(s'), pi pi'), exercised through actions.
    for _ in 0..200 {
        let n = rng.gen_range(2..=8usize);
        let s1 = SwapElement::from_members(
            n,
            &(1..=n).filter(|_| rng.gen_bool(0.5)).collect::<Vec<_>>(),
        )
        .unwrap();
        let s2 = SwapElement::from_members(
            n,
            &(1..=n).filter(|_| rng.gen_bool(0.5)).collect::<Vec<_>>(),
        )
        .unwrap();
        let pi1 = random_perm(n, &mut rng);
        let composed = s1.compose(&s2.permuted(&pi1));
        let b = BitString::from_index(n, rng.gen_range(0..(1u64 << n))).unwrap();
        let seq = s1.act_bitstring(pi1.act_bitstring(s2.act_bitstring(b)));
        // pi(s2) applied after pi1 equals pi1 then s2 pulled through.
        assert_eq!(composed.act_bitstring(pi1.act_bitstring(b)), seq);
    }
    pass(
        11,
        started.elapsed(),
        120.0,
        "action axioms, sigma homomorphism, conjugations, Burnside bounds over 1000 rounds",
    );
}

fn random_pauli(n: usize, rng: &mut ChaCha8Rng) -> PauliOperator {
    PauliOperator::from_parts(
        n,
        rng.gen_range(0..(1u64 << n)),
        rng.gen_range(0..(1u64 << n)),
        rng.gen_range(0..4),
    )
}

// Smoke check that the acceptance entry points stay wired to the public
// surface: one square-system instance reconstructed end to end.
#[test]
fn acceptance_support_square_case_roundtrip() {
    let theta = Angle::pi_fraction(3, 4).unwrap();
    let mat = build_a_symmetric(4, 2, theta).unwrap();
    let res = solve_feasibility(&mat, 1e-9).unwrap();
    assert!(res.feasible);
    let psi = state_from_solution(&res.c.unwrap(), &mat.orbits, 1e-9).unwrap();
    let group = PermutationGroup::symmetric(4).unwrap();
    let ts = generate_transitive_set(&group, 2).unwrap();
    assert!(verify_ts_state(&psi, &ts, theta, 1e-9).unwrap().is_ts);
    assert_eq!(mat.orbits.kind, GroupKind::Symmetric);
    let _ = TrajectorySet::new(4, ts.iter().copied().collect()).unwrap();
    let _ = StateVector::zero(2).unwrap();
}
