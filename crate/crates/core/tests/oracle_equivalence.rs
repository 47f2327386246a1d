use fh_spectra::molecule::Molecule;
use fh_spectra::oracle::{ga_levels, solve_extrapolated, GridSpec};
use fh_spectra::spectrum::ladder;
use fh_spectra::{PhysicalConstants, PotentialParams};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Finite differences agree with the closed-form ladder level by level,
    /// and find exactly as many states as the ladder.
    #[test]
    fn closed_form_ladder_matches_oracle(
        de in 1.0..12.0_f64,
        te in 0.8..3.5_f64,
        mu in 5.0..70.0_f64,
        alpha in 0.001..0.2_f64,
        natural in any::<bool>(),
    ) {
        let consts = if natural { PhysicalConstants::NATURAL } else { PhysicalConstants::SPATIAL };
        let m = Molecule::new("X", de, te, mu).unwrap();
        let p = PotentialParams::kratzer(&m, alpha);
        let closed = ladder(&p, &consts, mu, 5).unwrap();
        prop_assume!(!closed.levels.is_empty());
        let oracle = ga_levels(&p, &consts, mu, 5, 2001, 1e-6).unwrap();
        prop_assert_eq!(oracle.eigenvalues.len(), closed.levels.len());
        for (level, e) in closed.levels.iter().zip(&oracle.eigenvalues) {
            let err = (level.pn - e).abs() / level.pn.abs();
            prop_assert!(err <= 1e-6, "n = {}: closed {} oracle {} rel {:.2e}", level.n, level.pn, e, err);
        }
    }

    /// Infinite square well of width `w`: E_k = K(kπ/w)².
    #[test]
    fn particle_in_a_box(w in 0.5..20.0_f64, mu in 0.5..70.0_f64) {
        let consts = PhysicalConstants::SPATIAL;
        let grid = GridSpec::uniform(1.0, 1.0 + w, 801).unwrap();
        let res = solve_extrapolated(|_| 0.0, &consts, mu, &grid, 6, 1e-6).unwrap();
        for (k, e) in res.eigenvalues.iter().enumerate() {
            let x = (k + 1) as f64 * std::f64::consts::PI / w;
            let want = consts.kinetic(mu) * x * x;
            prop_assert!((e - want).abs() <= 1e-8 * want, "k = {k}: {e} vs {want}");
        }
    }
}

#[test]
fn harmonic_well_is_evenly_spaced() {
    let consts = PhysicalConstants::NATURAL;
    let mu = 1.0;
    let kin = consts.kinetic(mu);
    // V = K(t - c)² has E_k = K(2k + 1) with unit oscillator length.
    let centre = 10.0;
    let grid = GridSpec::uniform(0.5, 19.5, 1201).unwrap();
    let res = solve_extrapolated(
        |t| kin * (t - centre) * (t - centre),
        &consts,
        mu,
        &grid,
        5,
        1e-7,
    )
    .unwrap();
    for (k, e) in res.eigenvalues.iter().enumerate() {
        let want = kin * (2 * k + 1) as f64;
        assert!((e - want).abs() <= 1e-7 * want, "k = {k}: {e} vs {want}");
    }
}
