//! Output sizes of a blow-up instance rebuilt under other element orders.

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::{gen_theorem_instance, theorem_universe};
use crate::kernel::{VariableOrder, DEFAULT_EXPLICIT_CAP};
use crate::ops::OpKind;
use crate::oracle::{shuffled_order, size_under_order, OrderMode, MAX_EXHAUSTIVE_ORDER};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderStudyRecord {
    pub op: OpKind,
    pub m: usize,
    /// Permutation index in exhaustive mode, the shuffle seed in sampled mode.
    pub order_id: u64,
    pub order: Vec<String>,
    pub z_out: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderStudySummary {
    pub count: usize,
    pub min: usize,
    pub max: usize,
    pub median: f64,
}

/// Evaluates the instance once under its default order, then rebuilds the
/// output from its explicit listing under each studied order.
///
/// Sampled mode uses the shuffles for seeds `seed..seed + samples`.
pub fn run_order_study(
    op: OpKind,
    m: usize,
    mode: OrderMode,
    samples: usize,
    seed: u64,
) -> Result<Vec<OrderStudyRecord>> {
    let universe = theorem_universe(op, m)?;
    let n = universe.len();
    if mode == OrderMode::Exhaustive && n > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::UniverseTooLarge {
            n,
            max: MAX_EXHAUSTIVE_ORDER,
        });
    }
    if mode == OrderMode::Sampled && samples == 0 {
        return Err(Error::InvalidParameter("sample count must be positive".into()));
    }
    let mut inst = gen_theorem_instance(op, m)?;
    let out = inst.evaluate()?;
    let explicit = inst.manager.to_explicit(out, DEFAULT_EXPLICIT_CAP)?;
    let orders: Vec<(u64, Vec<String>)> = match mode {
        OrderMode::Exhaustive => universe
            .iter()
            .cloned()
            .permutations(n)
            .enumerate()
            .map(|(i, o)| (i as u64, o))
            .collect(),
        OrderMode::Sampled => (0..samples as u64)
            .map(|i| {
                let s = seed.wrapping_add(i);
                (s, shuffled_order(&universe, s))
            })
            .collect(),
    };
    orders
        .into_par_iter()
        .map(|(order_id, order)| {
            let z_out = size_under_order(&explicit, &VariableOrder::new(&order)?)?;
            Ok(OrderStudyRecord {
                op,
                m,
                order_id,
                order,
                z_out,
            })
        })
        .collect()
}

pub fn summarize(records: &[OrderStudyRecord]) -> Option<OrderStudySummary> {
    let mut sizes: Vec<usize> = records.iter().map(|r| r.z_out).collect();
    if sizes.is_empty() {
        return None;
    }
    sizes.sort_unstable();
    let n = sizes.len();
    let median = if n % 2 == 1 {
        sizes[n / 2] as f64
    } else {
        (sizes[n / 2 - 1] + sizes[n / 2]) as f64 / 2.0
    };
    Some(OrderStudySummary {
        count: n,
        min: sizes[0],
        max: sizes[n - 1],
        median,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::run_blowup;

    #[test]
    fn exhaustive_meet_m2_contains_natural_order() {
        let records = run_order_study(OpKind::Meet, 2, OrderMode::Exhaustive, 0, 0).unwrap();
        assert_eq!(records.len(), 24);
        let natural = run_blowup(OpKind::Meet, 2, 2).unwrap()[0].z_out;
        assert_eq!(records[0].z_out, natural);
        assert!(summarize(&records).unwrap().min <= natural);
    }

    #[test]
    fn sampled_study_is_deterministic() {
        let a = run_order_study(OpKind::Join, 3, OrderMode::Sampled, 5, 11).unwrap();
        let b = run_order_study(OpKind::Join, 3, OrderMode::Sampled, 5, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a[2].order_id, 13);
    }

    #[test]
    fn exhaustive_rejects_large_universe() {
        assert!(matches!(
            run_order_study(OpKind::Meet, 5, OrderMode::Exhaustive, 0, 0),
            Err(Error::UniverseTooLarge { n: 10, .. })
        ));
    }

    #[test]
    fn median_of_even_count() {
        let rec = |z| OrderStudyRecord {
            op: OpKind::Meet,
            m: 2,
            order_id: 0,
            order: vec![],
            z_out: z,
        };
        let s = summarize(&[rec(4), rec(1), rec(3), rec(2)]).unwrap();
        assert_eq!((s.min, s.max, s.median), (1, 4, 2.5));
    }
}
