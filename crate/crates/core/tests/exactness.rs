//! Exactness of the recursive resolution at small degrees, certified by
//! ranks of the full k-linear differential matrices:
//! rank d_n + rank d_{n+1} = dim(A) * |C_n|.

use resolvent_core::anick::AnickResolution;
use resolvent_core::cohom::full_differential_matrix;
use resolvent_core::presets;
use resolvent_core::rewrite::complete_default;

fn exactness_holds(pres: resolvent_core::rewrite::Presentation, max_n: usize) {
    let rs = complete_default(&pres).unwrap();
    let dim = rs.dim();
    let mut res = AnickResolution::new(rs).unwrap();
    let mut ranks = Vec::new();
    for n in 1..=max_n + 1 {
        ranks.push(full_differential_matrix(&mut res, n).unwrap().rank());
    }
    for n in 1..=max_n {
        assert_eq!(
            ranks[n - 1] + ranks[n],
            dim * res.chain_count(n),
            "exactness fails at degree {}",
            n
        );
    }
}

#[test]
fn nichols_p3() {
    exactness_holds(presets::nichols(3).unwrap(), 4);
}

#[test]
fn lifting_generic_parameters() {
    exactness_holds(presets::h27(1, 2, 1).unwrap(), 4);
}

#[test]
fn truncated_333() {
    exactness_holds(presets::truncated([3, 3, 3], 3).unwrap(), 4);
}

#[test]
fn bosonization_p3_q3() {
    exactness_holds(presets::bosonization(3, 3).unwrap(), 4);
}
