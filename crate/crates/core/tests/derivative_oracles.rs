//! Symbolic and jet derivatives against independent oracles.

use jtangent::jets::Jet3;
use jtangent::Expr;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_term(rng: &mut ChaCha8Rng, depth: usize) -> String {
    let c = |rng: &mut ChaCha8Rng| format!("{:.3}", rng.gen_range(0.1..2.0));
    match if depth == 0 {
        rng.gen_range(0..2)
    } else {
        rng.gen_range(0..7)
    } {
        0 => "t".to_string(),
        1 => c(rng),
        2 => format!(
            "({} + {})",
            random_term(rng, depth - 1),
            random_term(rng, depth - 1)
        ),
        3 => format!(
            "{} * {}",
            random_term(rng, depth - 1),
            random_term(rng, depth - 1)
        ),
        4 => format!("({})^{}", random_term(rng, depth - 1), rng.gen_range(0..4)),
        5 => {
            let f = ["sin", "cos", "sinh", "cosh", "exp"][rng.gen_range(0..5)];
            format!("{f}({} * {})", c(rng), random_term(rng, depth - 1))
        }
        _ => format!(
            "-{} - {}",
            random_term(rng, depth - 1),
            random_term(rng, depth - 1)
        ),
    }
}

#[test]
fn symbolic_derivatives_match_central_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let step = 1e-5;
    let mut checked = 0;
    while checked < 200 {
        let source = random_term(&mut rng, 3);
        let e = Expr::parse(&source).unwrap_or_else(|err| panic!("{source}: {err}"));
        let t = rng.gen_range(-1.0..1.0);
        let value = e.eval(t).unwrap();
        if value.abs() > 1e4 {
            continue;
        }
        let fd = (e.eval(t + step).unwrap() - e.eval(t - step).unwrap()) / (2.0 * step);
        let exact = e.differentiate().eval(t).unwrap();
        assert!(
            (exact - fd).abs() <= 1e-6 * (1.0 + value.abs().max(exact.abs())),
            "{source} at t = {t}: symbolic {exact}, central difference {fd}"
        );
        checked += 1;
    }
}

/// Sum of products of up to three affine forms in `(x, y, z)`.
struct Polynomial {
    terms: Vec<(f64, Vec<[f64; 4]>)>,
}

impl Polynomial {
    fn random(rng: &mut ChaCha8Rng) -> Self {
        let terms = (0..rng.gen_range(1..5))
            .map(|_| {
                let factors = (0..rng.gen_range(0..4))
                    .map(|_| std::array::from_fn(|_| rng.gen_range(-1.5..1.5)))
                    .collect();
                (rng.gen_range(-2.0..2.0), factors)
            })
            .collect();
        Polynomial { terms }
    }

    fn eval(&self, p: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(c, fs)| {
                c * fs
                    .iter()
                    .map(|a| a[0] + a[1] * p[0] + a[2] * p[1] + a[3] * p[2])
                    .product::<f64>()
            })
            .sum()
    }

    fn jet(&self, p: [f64; 3]) -> Jet3 {
        let v: [Jet3; 3] = std::array::from_fn(|k| Jet3::variable(k, p[k]));
        let mut out = Jet3::constant(0.0);
        for (c, fs) in &self.terms {
            let mut term = Jet3::constant(*c);
            for a in fs {
                term = term * (Jet3::constant(a[0]) + v[0] * a[1] + v[1] * a[2] + v[2] * a[3]);
            }
            out = out + term;
        }
        out
    }
}

/// Nested central differences along `axes`.
fn central(f: &dyn Fn([f64; 3]) -> f64, p: [f64; 3], axes: &[usize], step: f64) -> f64 {
    match axes.split_first() {
        None => f(p),
        Some((&a, rest)) => {
            let (mut hi, mut lo) = (p, p);
            hi[a] += step;
            lo[a] -= step;
            (central(f, hi, rest, step) - central(f, lo, rest, step)) / (2.0 * step)
        }
    }
}

#[test]
fn jet_arithmetic_matches_finite_differences_on_all_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut multi = Vec::new();
    for a in 0..3 {
        for b in a..3 {
            for c in b..3 {
                multi.push(vec![a, b, c]);
            }
            multi.push(vec![a, b]);
        }
        multi.push(vec![a]);
    }
    multi.push(vec![]);
    assert_eq!(multi.len(), 20);
    for _ in 0..100 {
        let poly = Polynomial::random(&mut rng);
        let p: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let jet = poly.jet(p);
        let f = |q: [f64; 3]| poly.eval(q);
        for axes in &multi {
            let step = [1e-4, 1e-4, 1e-3, 1e-2][axes.len()];
            let fd = central(&f, p, axes, step);
            let exact = jet.d(axes);
            assert!(
                (exact - fd).abs() <= 1e-6 * exact.abs().max(1.0),
                "d{axes:?} at {p:?}: jet {exact}, central difference {fd}"
            );
        }
    }
}

/// `∂_axes (g ∘ u)` by the multivariate chain rule through order 3, with
/// `dg = [g, g′, g″, g‴]` at `u`.
fn chain_rule(dg: [f64; 4], u: &Jet3, axes: &[usize]) -> f64 {
    let d = |a: &[usize]| u.d(a);
    match *axes {
        [] => dg[0],
        [a] => dg[1] * d(&[a]),
        [a, b] => dg[2] * d(&[a]) * d(&[b]) + dg[1] * d(&[a, b]),
        [a, b, c] => {
            dg[3] * d(&[a]) * d(&[b]) * d(&[c])
                + dg[2] * (d(&[a, b]) * d(&[c]) + d(&[a, c]) * d(&[b]) + d(&[b, c]) * d(&[a]))
                + dg[1] * d(&[a, b, c])
        }
        _ => unreachable!("order at most 3"),
    }
}

#[test]
fn hyperbolic_jets_follow_the_chain_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let poly = Polynomial::random(&mut rng);
        let p: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-0.5..0.5));
        let u = poly.jet(p);
        let (c, s) = (u.value().cosh(), u.value().sinh());
        for (jet, dg) in [(u.cosh(), [c, s, c, s]), (u.sinh(), [s, c, s, c])] {
            for axes in [
                vec![],
                vec![0],
                vec![1, 2],
                vec![0, 0, 1],
                vec![2, 2, 2],
                vec![0, 1, 2],
            ] {
                let exact = chain_rule(dg, &u, &axes);
                let got = jet.d(&axes);
                assert!(
                    (got - exact).abs() <= 1e-12 * exact.abs().max(1.0),
                    "d{axes:?}: jet {got}, chain rule {exact}"
                );
            }
        }
    }
}
