use qmemory::channel::{pattern_weight, MarkovChannel};
use qmemory::fidelity::entanglement_fidelity;
use qmemory::recovery::{build_recovery, correctable_set, syndrome_subspaces};
use qmemory::threshold::{crossing_between, ThresholdSolver, DEFAULT_TOLERANCE};
use qmemory::{
    fidelity_polynomial, BiPoly, Code, CodeFamily, FidelityOracle, FlipBasis, PauliString,
};

fn grid() -> impl Iterator<Item = (f64, f64)> {
    (0..=10).flat_map(|i| (1..10).map(move |j| (i as f64 / 10.0, j as f64 / 20.0)))
}

#[test]
fn dfs_scalar_action() {
    for n in 2..=8 {
        let code = Code::new(CodeFamily::Dfs, n, FlipBasis::Bit).unwrap();
        for mask in 0..1u32 << n {
            let s = PauliString::x(n, mask).unwrap();
            assert!(s.apply(code.zero()).max_abs_diff(code.zero()) < 1e-15);
            let image = s.apply(code.one());
            let sign = if mask.count_ones() % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            let mut expected = code.one().clone();
            expected.scale(sign.into());
            assert!(image.max_abs_diff(&expected) < 1e-15, "n={n} mask={mask:b}");
        }
    }
}

/// Fidelity with the qubit-1 tie-break replaced: `swap` maps a chosen
/// weight-2 representative to its complement.
fn rc4_fidelity_with(swap: u32) -> (BiPoly, FidelityOracle) {
    let code = Code::new(CodeFamily::Rc, 4, FlipBasis::Bit).unwrap();
    let channel = MarkovChannel::symbolic(4, FlipBasis::Bit).unwrap();
    let chosen: Vec<u32> = correctable_set(&channel, &code)
        .unwrap()
        .iter()
        .map(|t| {
            if t.pattern == swap {
                !swap & 0xf
            } else {
                t.pattern
            }
        })
        .collect();
    let terms: Vec<_> = chosen.iter().map(|&m| channel.term(m)).collect();
    let recovery = build_recovery(&syndrome_subspaces(&terms, &code).unwrap(), &code);
    assert!(recovery.completeness_residual() < 1e-12);
    let f = entanglement_fidelity(&code, &channel, &recovery)
        .unwrap()
        .poly;
    (f, FidelityOracle::new(&code, &channel, &recovery).unwrap())
}

#[test]
fn rc4_half_selection() {
    let baseline = fidelity_polynomial(CodeFamily::Rc, 4, FlipBasis::Bit)
        .unwrap()
        .poly;
    // q1q2 <-> q3q4 and q1q3 <-> q2q4 are mirror images, so their weights agree
    for swap in [0b0011, 0b0101] {
        let (f, oracle) = rc4_fidelity_with(swap);
        assert_eq!(f, baseline, "swap {swap:04b}");
        for (mu, p) in grid() {
            assert!((oracle.evaluate(mu, p) - f.eval(mu, p)).abs() < 1e-12);
        }
    }
    // q1q4 <-> q2q3 is not a mirror pair; the swap gains mu (1-mu)^2 p (1-p)(1-2p)
    let (f, oracle) = rc4_fidelity_with(0b1001);
    let one = BiPoly::one();
    let gain = BiPoly::mu()
        * (&one - &BiPoly::mu()).checked_pow(2).unwrap()
        * BiPoly::p()
        * (&one - &BiPoly::p())
        * (&one - &BiPoly::p().checked_scale(2).unwrap());
    assert_eq!(&f - &baseline, gain);
    assert_eq!(gain, pattern_weight(4, 0b0110) - pattern_weight(4, 0b1001));
    for (mu, p) in grid() {
        assert!((oracle.evaluate(mu, p) - f.eval(mu, p)).abs() < 1e-12);
        assert!(f.eval(mu, p) + 1e-15 >= baseline.eval(mu, p));
    }
}

#[test]
fn more_qubits_help_repetition_codes() {
    let f: Vec<BiPoly> = [3, 5, 7]
        .iter()
        .map(|&n| {
            fidelity_polynomial(CodeFamily::Rc, n, FlipBasis::Bit)
                .unwrap()
                .poly
        })
        .collect();
    for (mu, p) in grid() {
        let v: Vec<f64> = f.iter().map(|f| f.eval(mu, p)).collect();
        assert!(
            v[2] + 1e-12 >= v[1] && v[1] + 1e-12 >= v[0],
            "({mu}, {p}): {v:?}"
        );
    }
}

#[test]
fn dfs_ordering() {
    let f = |n| {
        fidelity_polynomial(CodeFamily::Dfs, n, FlipBasis::Bit)
            .unwrap()
            .poly
    };
    let (d3, d4, d5, d6) = (f(3), f(4), f(5), f(6));
    for (mu, p) in grid() {
        assert!(d5.eval(mu, p) <= d3.eval(mu, p) + 1e-12, "({mu}, {p})");
        assert!(d6.eval(mu, p) <= d4.eval(mu, p) + 1e-12, "({mu}, {p})");
    }
}

#[test]
fn dfs4_overtakes_dfs3() {
    let f = |n| {
        fidelity_polynomial(CodeFamily::Dfs, n, FlipBasis::Bit)
            .unwrap()
            .poly
    };
    let (d3, d4) = (f(3), f(4));
    for p in [0.1, 0.25, 0.4, 0.45] {
        let c = crossing_between(&d4, &d3, p, DEFAULT_TOLERANCE).unwrap();
        assert!(c.mu_star > 0.0 && c.mu_star < 1.0);
        assert!(d4.eval(1.0, p) > d3.eval(1.0, p));
    }
}

#[test]
fn threshold_sign_structure() {
    let solver = ThresholdSolver::new(4).unwrap();
    for p in [0.35, 0.40, 0.45] {
        let c = solver.crossing(p, DEFAULT_TOLERANCE).unwrap().unwrap();
        assert!(solver.gap(c.mu_star, p).abs() < 10.0 * DEFAULT_TOLERANCE);
        for i in 0..=200 {
            let mu = i as f64 / 200.0;
            if mu <= c.mu_star - 0.01 {
                assert!(solver.gap(mu, p) < 0.0, "p={p} mu={mu}");
            } else if mu >= c.mu_star + 0.01 && mu < 1.0 {
                assert!(solver.gap(mu, p) > 0.0, "p={p} mu={mu}");
            }
        }
        let fine = solver
            .crossing_with_grid(p, DEFAULT_TOLERANCE, 4096)
            .unwrap()
            .unwrap();
        assert!((fine.mu_star - c.mu_star).abs() <= DEFAULT_TOLERANCE);
    }
}

#[test]
fn threshold_at_tiny_error_rate() {
    let solver = ThresholdSolver::new(4).unwrap();
    let p = 1e-6;
    assert!(solver.gap(0.0, p) < 0.0);
    assert!(solver.gap(1.0, p) > 0.0);
    let c = solver.crossing(p, 1e-12).unwrap().unwrap();
    assert!(c.mu_star > 0.0 && c.mu_star < 1.0);
    assert!(solver.gap(c.mu_star, p).abs() < 1e-9);
}

#[test]
fn threshold_curve_covers_plotted_range() {
    let solver = ThresholdSolver::new(4).unwrap();
    let mut last = f64::INFINITY;
    for i in 5..=45 {
        let p = i as f64 / 100.0;
        let c = solver
            .crossing(p, DEFAULT_TOLERANCE)
            .unwrap()
            .expect("crossing");
        assert!(c.mu_star <= last + 1e-9, "mu* not decreasing at p={p}");
        last = c.mu_star;
    }
}
