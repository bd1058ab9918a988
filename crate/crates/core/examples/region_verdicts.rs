//! Exact boundedness verdicts for several exponent regions.

use tfsharp::lattice::rat;
use tfsharp::regions::{bpwm_verdict, brwm_verdict, dual_exponents, RegionKind, RegionQuery};
use tfsharp::{ExponentTuple, ExtendedExponent};

fn e(s: &str) -> ExtendedExponent {
    s.parse().unwrap()
}

fn main() -> tfsharp::Result<()> {
    // Sjöstrand class acting on L^2.
    let two = e("2");
    let v = bpwm_verdict(e("inf"), e("1"), two, two, two, two)?;
    println!("M^(inf,1) on L^2: bounded = {}", v.bounded);

    // A tuple that fails, with the conditions it breaks.
    let t = ExponentTuple::new(1, e("1"), e("1"), vec![two, two], vec![two, two])?;
    let v = brwm_verdict(&t)?;
    println!("R(L^2 x L^2) into M^(1,1): bounded = {}, failed = {:?}", v.bounded, v.failed_conditions);
    let dual = dual_exponents(&t)?;
    println!("dual tuple: p = {}, q = {}, p_j = {:?}", dual.p, dual.q, dual.pj);

    // Boundary detection: exactly on the edge of the region.
    let edge = bpwm_verdict(e("2"), e("2"), two, two, two, two)?;
    println!("M^(2,2) on L^2: bounded = {}, boundary = {}", edge.bounded, edge.boundary);

    // Smoothness thresholds through the generic query.
    let query = RegionQuery {
        p1: Some(e("1")),
        q1: Some(two),
        p2: Some(two),
        q2: Some(two),
        s: Some(rat(1, 2)),
        d: Some(1),
        ..Default::default()
    };
    let v = query.evaluate(RegionKind::Bessel)?;
    println!("bessel with p1 = 1 at the threshold s = 1/2, d = 1: bounded = {}, failed = {:?}", v.bounded, v.failed_conditions);
    Ok(())
}
