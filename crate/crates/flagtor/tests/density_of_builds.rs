//! Cross-module checks tying the construction to the density machinery: degree-derived density bounds of the `X_m`
//! skeletons and the drift of the lower bound toward 10/3 as the telescope
//! dominates.

use flagtor::construct::build_xm;
use flagtor::density::{density_bounds, essential_density, DensityMode};
use flagtor::Ratio64;

#[test]
fn xm_density_upper_bound_is_six() {
    // maxdeg(X_m) <= 12 gives m(H_m) <= 6 for every m; equality of the bound
    // at m = 6 where some vertex reaches degree 12
    for m in [2u64, 4, 5, 6, 7, 12] {
        let x = build_xm(m).unwrap();
        let g = x.complex.skeleton_graph();
        let (lo, hi) = density_bounds(&g);
        assert!(hi <= Ratio64::from_integer(6), "m={m}");
        assert!(lo <= hi, "m={m}");
    }
    let x6 = build_xm(6).unwrap().complex.skeleton_graph();
    assert_eq!(density_bounds(&x6).1, Ratio64::from_integer(6));
}

#[test]
fn xm_density_lower_bound_drifts_toward_ten_thirds() {
    // powers of two maximize n_k against k = 1: the edge/vertex ratio climbs
    // toward (but never reaches) 10/3
    let limit = Ratio64::new(10, 3);
    let mut prev = Ratio64::from_integer(0);
    for exp in [2u32, 5, 9, 13] {
        let x = build_xm(1 << exp).unwrap();
        let g = x.complex.skeleton_graph();
        let (lo, _) = density_bounds(&g);
        assert!(lo > prev, "lower bound must increase with the telescope length");
        assert!(lo < limit, "strictly below 10/3");
        prev = lo;
    }
    assert!(prev > Ratio64::new(13, 4), "within striking distance of 10/3 by n_k = 13");
}

#[test]
fn xm_exact_density_within_bounds_by_maxflow() {
    let x = build_xm(6).unwrap();
    let g = x.complex.skeleton_graph();
    let report = essential_density(&g, DensityMode::Maxflow).unwrap();
    let (lo, hi) = density_bounds(&g);
    assert!(lo <= report.density && report.density <= hi);
    // the exact value beats the naive average-degree bound here
    assert!(report.density >= lo);
}
