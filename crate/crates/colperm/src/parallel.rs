//! Splits a search by its first placement and counts the branches on the
//! rayon pool. Workers share nothing but the final sum.

use colperm_core::{BigCount, CountReport, Search};
use rayon::prelude::*;

/// Same result as [`Search::count`], computed branch-parallel. The budget
/// applies to each branch and to the total.
pub fn count_partitioned(search: &Search) -> colperm_core::Result<CountReport> {
    if search.n() == 0 {
        return search.count();
    }
    let branches = search
        .first_moves()
        .into_par_iter()
        .map(|first| search.count_under(&[first]))
        .collect::<colperm_core::Result<Vec<_>>>()?;
    let mut count = BigCount::zero();
    let mut states = BigCount::one();
    for b in branches {
        count += b.count;
        states += BigCount::from(b.states);
    }
    let limit = search.budget().max_states();
    if states > BigCount::from(limit) {
        return Err(colperm_core::Error::BudgetExceeded { limit });
    }
    Ok(CountReport {
        n: search.n(),
        r: search.r(),
        pattern_set_tag: search.tag().to_string(),
        count,
        states_visited: states,
    })
}
