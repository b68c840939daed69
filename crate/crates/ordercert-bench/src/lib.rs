//! Shared fixtures for the benchmark targets.

use ordercert_core::groups::Group;

pub fn klein() -> Group {
    Group::klein_bottle()
}

pub fn free_two() -> Group {
    Group::free(2).expect("rank 2")
}

pub fn three_by_three() -> Group {
    let c3 = Group::finite_cyclic(3).expect("order 3");
    Group::direct_product(vec![c3.clone(), c3]).expect("two factors")
}
