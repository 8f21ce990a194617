//! Oracle-query accounting for the classical strategies, with and without
//! advance knowledge of half the oracle's choice.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::grover::{grover_iterations, run_grover, OracleSpec, QueryCounter};
use crate::histories::AdvancedInfo;
use crate::layout::RegisterLayout;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalRunRecord {
    pub oracle_k: u64,
    pub strategy: String,
    pub queries: Vec<u64>,
    pub deltas: Vec<u8>,
    pub solution: u64,
    pub query_count: usize,
}

/// Query the drawers in `order` until delta = 1; after `2^n - 1` misses
/// the last drawer is inferred without a query.
pub fn plain_classical_search(n: usize, order: &[u64], oracle_k: u64) -> Result<ClassicalRunRecord> {
    let layout = RegisterLayout::new(n)?;
    check_permutation(order, layout.register_values())?;
    if oracle_k >= layout.register_values() {
        return Err(Error::NotACandidate {
            what: "oracle choice",
            value: oracle_k.to_string(),
            candidates: vec![format!("0..{}", layout.register_values())],
        });
    }
    let oracle = OracleSpec::new(n)?;
    let (queries, deltas, solution) = query_until_found(&oracle, order, oracle_k);
    Ok(ClassicalRunRecord {
        oracle_k,
        strategy: format!("plain{order:?}"),
        query_count: queries.len(),
        queries,
        deltas,
        solution,
    })
}

/// Searches only the candidates left by `info`, starting with `first_query`
/// (or the smallest candidate). With two candidates one query decides.
pub fn advanced_classical_search(
    info: &AdvancedInfo,
    oracle_k: u64,
    first_query: Option<u64>,
) -> Result<ClassicalRunRecord> {
    if !info.admits(oracle_k) || oracle_k >= 1 << info.n() {
        return Err(info.not_a_candidate("oracle choice", oracle_k));
    }
    let mut order = info.candidates();
    if let Some(q) = first_query {
        let Some(pos) = order.iter().position(|&c| c == q) else {
            return Err(info.not_a_candidate("query", q));
        };
        let q = order.remove(pos);
        order.insert(0, q);
    }
    let oracle = OracleSpec::new(info.n())?;
    let (queries, deltas, solution) = query_until_found(&oracle, &order, oracle_k);
    Ok(ClassicalRunRecord {
        oracle_k,
        strategy: format!("advanced[{}]", info.label()),
        query_count: queries.len(),
        queries,
        deltas,
        solution,
    })
}

fn query_until_found(oracle: &OracleSpec, order: &[u64], oracle_k: u64) -> (Vec<u64>, Vec<u8>, u64) {
    let mut queries = Vec::new();
    let mut deltas = Vec::new();
    for (i, &x) in order.iter().enumerate() {
        if i + 1 == order.len() {
            // everything else missed
            return (queries, deltas, x);
        }
        let d = oracle.delta(oracle_k, x);
        queries.push(x);
        deltas.push(d);
        if d == 1 {
            return (queries, deltas, x);
        }
    }
    unreachable!("order is non-empty")
}

fn check_permutation(order: &[u64], size: u64) -> Result<()> {
    let mut seen = vec![false; size as usize];
    if order.len() as u64 != size {
        return Err(Error::NotAPermutation(size as usize));
    }
    for &x in order {
        if x >= size || std::mem::replace(&mut seen[x as usize], true) {
            return Err(Error::NotAPermutation(size as usize));
        }
    }
    Ok(())
}

/// Exact mean query count of the plain search over a uniform oracle choice.
pub fn plain_average(n: usize, order: &[u64]) -> Result<Ratio<u64>> {
    let size = 1u64 << n;
    let total = (0..size)
        .map(|k| plain_classical_search(n, order, k).map(|r| r.query_count as u64))
        .sum::<Result<u64>>()?;
    Ok(Ratio::new(total, size))
}

/// The `index`-th permutation of `0..len` in lexicographic order.
pub fn nth_permutation(len: usize, mut index: usize) -> Vec<u64> {
    let mut pool: Vec<u64> = (0..len as u64).collect();
    let mut out = Vec::with_capacity(len);
    for i in (0..len).rev() {
        let f = factorial(i);
        out.push(pool.remove(index / f));
        index %= f;
    }
    out
}

pub fn factorial(m: usize) -> usize {
    (1..=m).product()
}

/// Plain-search mean and worst case taken over every query order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderSweep {
    pub orders: usize,
    pub min_average: Ratio<u64>,
    pub max_average: Ratio<u64>,
    pub worst: u64,
}

impl OrderSweep {
    pub fn order_independent(&self) -> bool {
        self.min_average == self.max_average
    }
}

/// Largest `n` whose `(2^n)!` orders are swept exhaustively.
pub const MAX_SWEEP_N: usize = 3;

pub fn sweep_query_orders(n: usize, exec: Execution) -> Result<OrderSweep> {
    RegisterLayout::new(n)?;
    if n > MAX_SWEEP_N {
        return Err(Error::Size {
            n,
            reason: "order sweep is limited to n <= 3",
        });
    }
    let size = 1usize << n;
    let orders = factorial(size);

    type Acc = Option<(Ratio<u64>, Ratio<u64>, u64)>;
    let merge = |a: Acc, b: Acc| match (a, b) {
        (None, x) | (x, None) => x,
        (Some((lo1, hi1, w1)), Some((lo2, hi2, w2))) => Some((lo1.min(lo2), hi1.max(hi2), w1.max(w2))),
    };
    let acc = exec.fold_range(
        0..orders,
        || None,
        |acc: Acc, idx| {
            let order = nth_permutation(size, idx);
            let mut total = 0u64;
            let mut worst = 0u64;
            for k in 0..size as u64 {
                let c = plain_classical_search(n, &order, k)
                    .expect("valid permutation")
                    .query_count as u64;
                total += c;
                worst = worst.max(c);
            }
            let avg = Ratio::new(total, size as u64);
            merge(acc, Some((avg, avg, worst)))
        },
        merge,
    );
    let (min_average, max_average, worst) = acc.expect("at least one order");
    Ok(OrderSweep {
        orders,
        min_average,
        max_average,
        worst,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryTable {
    pub n: usize,
    pub plain_average: Ratio<u64>,
    pub plain_worst: u64,
    /// Worst case over every half-information scenario and candidate.
    pub advanced: u64,
    pub quantum: u64,
    /// Present when every query order was enumerated.
    pub order_sweep: Option<OrderSweep>,
}

pub fn expected_query_table(n: usize, exec: Execution) -> Result<QueryTable> {
    let layout = RegisterLayout::new(n)?;
    let ascending: Vec<u64> = (0..layout.register_values()).collect();
    let plain_average = plain_average(n, &ascending)?;
    let plain_worst = (0..layout.register_values())
        .map(|k| plain_classical_search(n, &ascending, k).map(|r| r.query_count as u64))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);

    let mut advanced = 0;
    for info in AdvancedInfo::all(n)? {
        for k in info.candidates() {
            let r = advanced_classical_search(&info, k, None)?;
            debug_assert_eq!(r.solution, k);
            advanced = advanced.max(r.query_count as u64);
        }
    }

    let mut counter = QueryCounter::new();
    run_grover(n, grover_iterations(n), &mut counter)?;

    let order_sweep = if n <= MAX_SWEEP_N {
        Some(sweep_query_orders(n, exec)?)
    } else {
        None
    };

    Ok(QueryTable {
        n,
        plain_average,
        plain_worst,
        advanced,
        quantum: counter.count(),
        order_sweep,
    })
}
