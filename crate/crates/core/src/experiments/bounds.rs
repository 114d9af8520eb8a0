//! Size bounds of the counter-network families under natural and shuffled orders.

use rayon::prelude::*;

use crate::error::Result;
use crate::generators::{gen_base_family, BaseFamilyKind};
use crate::kernel::{DiagramManager, Semantics, VariableOrder};
use crate::oracle::shuffled_order;

pub const E_Q_M_CAP: usize = 24;
pub const C_T_M_CAP: usize = 8;
pub const BOUND_SAMPLES: usize = 20;
pub const BOUND_SEED: u64 = 0x5eed;

fn ceil_log2(x: usize) -> u32 {
    x.next_power_of_two().trailing_zeros()
}

/// The linear-network bound on the node count of `kind` at `m`, for the four
/// bounded kinds.
pub fn bound_for(kind: BaseFamilyKind, m: usize) -> Option<usize> {
    let sq = m * m;
    match kind {
        BaseFamilyKind::E => Some(2 + m * (1 << (ceil_log2(m + 1) + 1))),
        BaseFamilyKind::Q => Some(2 + 4 * sq),
        BaseFamilyKind::C => Some(2 + sq * (1 << ceil_log2(m + 2))),
        BaseFamilyKind::T => Some(2 + sq * (1 << (ceil_log2(m + 2) + 2))),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub kind: BaseFamilyKind,
    pub m: usize,
    pub k: Option<usize>,
    /// Shuffle seed of the order, `None` for the natural order.
    pub order_seed: Option<u64>,
    pub size: usize,
    pub bound: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundsReport {
    pub checks: usize,
    pub natural_checks: usize,
    pub violations: Vec<BoundCheck>,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks E and Q for `m ≤ min(m_max, 24)` and C and T for `m ≤ min(m_max, 8)`,
/// each under the natural order and 20 shuffled ones.
pub fn verify_bounds(m_max: usize) -> Result<BoundsReport> {
    verify_bounds_with(
        m_max.min(E_Q_M_CAP),
        m_max.min(C_T_M_CAP),
        BOUND_SAMPLES,
        BOUND_SEED,
    )
}

/// As [`verify_bounds`] with explicit ranges, sample count and seed.
pub fn verify_bounds_with(
    e_q_max: usize,
    c_t_max: usize,
    samples: usize,
    seed: u64,
) -> Result<BoundsReport> {
    let mut cells: Vec<(BaseFamilyKind, usize, Option<usize>)> = Vec::new();
    for m in 1..=e_q_max {
        cells.extend((1..=m).map(|k| (BaseFamilyKind::E, m, Some(k))));
        cells.extend((1..=2 * m).map(|k| (BaseFamilyKind::Q, m, Some(k))));
    }
    for m in 1..=c_t_max {
        cells.push((BaseFamilyKind::C, m, None));
        cells.extend((1..=2 * m).map(|k| (BaseFamilyKind::T, m, Some(k))));
    }
    let results: Vec<Vec<BoundCheck>> = cells
        .into_par_iter()
        .map(|(kind, m, k)| check_cell(kind, m, k, samples, seed))
        .collect::<Result<_>>()?;
    let mut report = BoundsReport::default();
    for check in results.into_iter().flatten() {
        report.checks += 1;
        if check.order_seed.is_none() {
            report.natural_checks += 1;
        }
        if check.size > check.bound {
            report.violations.push(check);
        }
    }
    Ok(report)
}

fn check_cell(
    kind: BaseFamilyKind,
    m: usize,
    k: Option<usize>,
    samples: usize,
    seed: u64,
) -> Result<Vec<BoundCheck>> {
    let universe = kind.universe(m);
    let bound = bound_for(kind, m).expect("bounded kind");
    let orders = std::iter::once((None, universe.clone())).chain((0..samples as u64).map(|i| {
        let s = seed.wrapping_add(i);
        (Some(s), shuffled_order(&universe, s))
    }));
    orders
        .map(|(order_seed, names)| {
            let mut mgr = DiagramManager::new(Semantics::Zdd, VariableOrder::new(names)?);
            let f = gen_base_family(&mut mgr, kind, m, k, None)?;
            Ok(BoundCheck {
                kind,
                m,
                k,
                order_seed,
                size: mgr.node_count(f)?,
                bound,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_values() {
        // ⌈log₂ 4⌉ = 2, so E_3 is bounded by 2 + 3·2³
        assert_eq!(bound_for(BaseFamilyKind::E, 3), Some(26));
        assert_eq!(bound_for(BaseFamilyKind::Q, 3), Some(38));
        assert_eq!(bound_for(BaseFamilyKind::C, 2), Some(18));
        assert_eq!(bound_for(BaseFamilyKind::T, 2), Some(66));
        assert_eq!(bound_for(BaseFamilyKind::H, 2), None);
    }

    #[test]
    fn small_bounds_hold() {
        let report = verify_bounds_with(5, 3, 3, 1).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(report.checks, 4 * report.natural_checks);
    }
}
