mod common;

use common::rng;
use nalgebra::{DMatrix, DVector};
use postulate::algorithms::{
    deutsch_jozsa, dj_distribution, dj_final_state, gf2_solve, grover, grover_closed_form,
    grover_iterations, grover_state, simon, simon_distribution, simon_final_state, BooleanOracle,
    DjKind, DjOracle, Gf2System, SimonOracle,
};
use postulate::hilbert::C64;
use postulate::measurement::SemanticsMode;
use rand::Rng;

fn parity(x: u64) -> f64 {
    if x.count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

#[test]
fn dj_state_matches_double_sum() {
    let mut r = rng(1);
    for n in 1..=5 {
        let size = 1u64 << n;
        for oracle in [
            DjOracle::constant(n, false).unwrap(),
            DjOracle::constant(n, true).unwrap(),
            DjOracle::random_balanced(n, &mut r).unwrap(),
        ] {
            let psi = dj_final_state(&oracle).unwrap();
            let f = |x: u64| oracle.table().eval(x);
            for z in 0..size {
                let sum: f64 = (0..size).map(|x| parity(x & z) * parity(f(x))).sum();
                let expected = sum / size as f64 * std::f64::consts::FRAC_1_SQRT_2;
                let amp0 = psi.amplitude((z * 2) as usize);
                let amp1 = psi.amplitude((z * 2 + 1) as usize);
                assert!((amp0 - C64::new(expected, 0.0)).norm() < 1e-12);
                assert!((amp1 + C64::new(expected, 0.0)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn dj_state_is_a_product_with_the_ancilla() {
    let mut r = rng(2);
    let oracle = DjOracle::random_balanced(4, &mut r).unwrap();
    let psi = dj_final_state(&oracle).unwrap();
    let m = DMatrix::from_fn(16, 2, |z, a| psi.amplitude(z * 2 + a));
    let singular = m.svd(false, false).singular_values;
    assert!(singular.iter().filter(|&&s| s > 1e-12).count() == 1);
}

#[test]
fn dj_decides_constant_and_balanced() {
    let mut r = rng(3);
    for n in 1..=10 {
        let constant = DjOracle::constant(n, n % 2 == 0).unwrap();
        assert!((dj_distribution(&constant).unwrap()[0] - 1.0).abs() < 1e-10);
        for _ in 0..5 {
            let balanced = DjOracle::random_balanced(n, &mut r).unwrap();
            assert_eq!(balanced.kind(), DjKind::Balanced);
            assert!(dj_distribution(&balanced).unwrap()[0].abs() < 1e-10);
            for mode in SemanticsMode::ALL {
                assert_eq!(deutsch_jozsa(&balanced, mode, &mut r).unwrap().verdict, DjKind::Balanced);
                assert_eq!(deutsch_jozsa(&constant, mode, &mut r).unwrap().verdict, DjKind::Constant);
            }
        }
    }
}

fn brute_simon_oracle(n: usize, s: u64, r: &mut impl Rng) -> BooleanOracle {
    // two-to-one: f(x) = f(x ^ s), labels drawn from a shuffled pool
    let size = 1u64 << n;
    let mut pool: Vec<u64> = (0..size).collect();
    for i in (1..pool.len()).rev() {
        pool.swap(i, r.random_range(0..=i));
    }
    let mut values = vec![u64::MAX; size as usize];
    let mut next = 0;
    for x in 0..size {
        if values[x as usize] == u64::MAX {
            values[x as usize] = pool[next];
            values[(x ^ s) as usize] = pool[next];
            next += 1;
        }
    }
    BooleanOracle::new(n, n, values).unwrap()
}

#[test]
fn simon_state_matches_formula() {
    let mut r = rng(4);
    for n in 1..=4 {
        let size = 1u64 << n;
        let s = r.random_range(1..size);
        let table = brute_simon_oracle(n, s, &mut r);
        let oracle = SimonOracle::new(table.clone()).unwrap();
        assert_eq!(oracle.period(), s);
        let psi = simon_final_state(&oracle).unwrap();

        let mut expected = DVector::<C64>::zeros((size * size) as usize);
        for k in 0..size {
            for j in 0..size {
                expected[(j * size + table.eval(k)) as usize] += C64::new(parity(j & k) / size as f64, 0.0);
            }
        }
        for (i, amp) in psi.amplitudes().iter().enumerate() {
            assert!((amp - expected[i]).norm() < 1e-12);
        }
    }
}

#[test]
fn simon_support_is_orthogonal_complement() {
    let mut r = rng(5);
    for n in 1..=8 {
        let size = 1u64 << n;
        for _ in 0..5 {
            let s = r.random_range(1..size);
            let oracle = SimonOracle::random(n, s, &mut r).unwrap();
            let dist = simon_distribution(&oracle).unwrap();
            let uniform = 1.0 / (1u64 << (n - 1)) as f64;
            for (j, p) in dist.iter().enumerate() {
                let orthogonal = (j as u64 & s).count_ones().is_multiple_of(2);
                let target = if orthogonal { uniform } else { 0.0 };
                assert!((p - target).abs() < 1e-10, "n={n} s={s} j={j}");
            }
            let result = simon(&oracle, SemanticsMode::Lueders, &mut r, 50).unwrap();
            assert_eq!(result.period, s);
        }
    }
}

#[test]
fn gf2_solution_is_orthogonal_to_rows() {
    let mut r = rng(6);
    for _ in 0..200 {
        let width = r.random_range(2..=10);
        let s: u64 = r.random_range(1..1u64 << width);
        let rows = (0..3 * width)
            .map(|_| r.random_range(0..1u64 << width))
            .filter(|j| (j & s).count_ones().is_multiple_of(2));
        let system = Gf2System::with_rows(width, rows).unwrap();
        if system.rank() == width - 1 {
            let solution = gf2_solve(&system).unwrap();
            assert!(solution.unique);
            assert_eq!(solution.vector, s);
        }
    }
}

fn dense_grover(n: usize, marked: &[u64], k: usize) -> f64 {
    let size = 1usize << n;
    let s = DVector::from_element(size, 1.0 / (size as f64).sqrt());
    let diffusion = &s * s.transpose() * 2.0 - DMatrix::identity(size, size);
    let oracle = DMatrix::from_fn(size, size, |i, j| {
        if i != j {
            0.0
        } else if marked.contains(&(i as u64)) {
            -1.0
        } else {
            1.0
        }
    });
    let mut v = s.clone();
    for _ in 0..k {
        v = &diffusion * (&oracle * v);
    }
    marked.iter().map(|&m| v[m as usize].powi(2)).sum()
}

#[test]
fn grover_matches_closed_form_and_dense_evolution() {
    let mut r = rng(7);
    for n in 1..=8 {
        let size = 1u64 << n;
        for m in 1..=2usize {
            if m as u64 >= size {
                continue;
            }
            let mut marked: Vec<u64> = Vec::new();
            while marked.len() < m {
                let x = r.random_range(0..size);
                if !marked.contains(&x) {
                    marked.push(x);
                }
            }
            let k = grover_iterations(n, m);
            let result = grover(n, &marked, SemanticsMode::StrictVonNeumann, &mut r).unwrap();
            assert_eq!(result.iterations, k);
            assert!((result.success_probability - grover_closed_form(n, m, k)).abs() < 1e-10);
            if n <= 6 {
                assert!((result.success_probability - dense_grover(n, &marked, k)).abs() < 1e-10);
            }
        }
    }
    let psi = grover_state(2, &[3], 1).unwrap();
    assert!((psi.amplitude(3).norm_sqr() - 1.0).abs() < 1e-10);
}

#[test]
fn algorithm_readouts_ignore_semantics_mode() {
    let dj = DjOracle::random_balanced(5, &mut rng(8)).unwrap();
    let simon_oracle = SimonOracle::random(4, 0b1011, &mut rng(9)).unwrap();
    for seed in 0..20 {
        let run = |mode| {
            let mut r = rng(seed);
            let d = deutsch_jozsa(&dj, mode, &mut r).unwrap();
            let s = simon(&simon_oracle, mode, &mut r, 100).unwrap();
            let g = grover(5, &[3, 17], mode, &mut r).unwrap();
            (d.measured, d.probability_zero.to_bits(), s, g.found, g.success_probability.to_bits())
        };
        assert_eq!(run(SemanticsMode::StrictVonNeumann), run(SemanticsMode::Lueders));
    }
}
