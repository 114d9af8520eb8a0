//! Expected outputs of the blow-up instances, listed by testing each candidate
//! set against the defining predicates. Nothing here touches a diagram.

use crate::error::{Error, Result};
use crate::explicit::{ExplicitFamily, SetBits};
use crate::generators::{grid_line, is_hwb_op, theorem_universe};
use crate::ops::OpKind;

/// Largest m whose `2^{m²}` grid subsets are enumerated.
const GRID_M_CAP: usize = 4;

struct Layout {
    universe: ExplicitFamily,
}

impl Layout {
    fn pos(&self, name: &str) -> usize {
        self.universe.position(name).expect("instance element")
    }

    fn set(&self, names: impl IntoIterator<Item = String>) -> SetBits {
        names
            .into_iter()
            .fold(SetBits::EMPTY, |acc, n| acc.with(self.pos(&n)))
    }

    /// Lifts a bitmask over `y1..y_count` into universe positions.
    fn ys(&self, mask: u64, count: usize) -> SetBits {
        self.set((1..=count).filter(|i| mask >> (i - 1) & 1 == 1).map(|i| format!("y{i}")))
    }
}

fn ones(mask: u64) -> usize {
    mask.count_ones() as usize
}

fn has(mask: u64, i: usize) -> bool {
    mask >> (i - 1) & 1 == 1
}

fn hwb(mask: u64) -> bool {
    let size = ones(mask);
    size > 0 && has(mask, size)
}

fn line_hits(mask: u64, m: usize, k: usize) -> usize {
    grid_line(m, k).into_iter().filter(|&i| has(mask, i)).count()
}

fn permutation(mask: u64, m: usize) -> bool {
    (1..=2 * m).all(|k| line_hits(mask, m, k) == 1)
}

/// The proved output of the `op` instance at `m`, or `None` when the proof
/// gives no closed form. For closure this is `P_m`, the expected value of the
/// output intersected with `C_m`.
pub fn enumerated_expected(op: OpKind, m: usize) -> Result<Option<ExplicitFamily>> {
    let names = theorem_universe(op, m)?;
    let layout = Layout {
        universe: ExplicitFamily::new(names)?,
    };
    let mut out = layout.universe.clone();
    if is_hwb_op(op) {
        let x = layout.set((1..=m).map(|i| format!("x{i}")));
        for mask in 0u64..1 << m {
            let s = layout.ys(mask, m);
            match op {
                OpKind::Join | OpKind::DisjointJoin | OpKind::JointJoin if hwb(mask) => {
                    out.insert(s.union(x));
                }
                OpKind::Meet if hwb(mask) => {
                    out.insert(s);
                }
                OpKind::Delta if hwb(mask) => {
                    for sub in 0u64..1 << m {
                        let a = layout.set((1..=m).filter(|&i| has(sub, i)).map(|i| format!("x{i}")));
                        out.insert(s.union(a));
                    }
                }
                OpKind::Quotient if !hwb(mask) => {
                    out.insert(s);
                }
                OpKind::Remainder if hwb(mask) => {
                    // {x_k} ∪ S with S outside E_{m,k} and inside H_m
                    let size = ones(mask);
                    for k in (1..=m).filter(|&k| !(size == k && has(mask, k))) {
                        out.insert(s.with(layout.pos(&format!("x{k}"))));
                    }
                }
                _ => {}
            }
        }
        return Ok(Some(out));
    }
    if m > GRID_M_CAP {
        return Err(Error::InvalidParameter(format!(
            "enumeration over 2^{} grid subsets is too large",
            m * m
        )));
    }
    let x = layout.set((1..=2 * m).map(|i| format!("x{i}")));
    let w = if matches!(op, OpKind::Maximal | OpKind::Minimal) {
        layout.set(["w".to_string()])
    } else {
        SetBits::EMPTY
    };
    let n = m * m;
    for mask in 0u64..1 << n {
        let s = layout.ys(mask, n);
        let sized = ones(mask) == m;
        let perm = sized && permutation(mask, m);
        match op {
            OpKind::Permit if sized && !perm => {
                out.insert(s);
            }
            OpKind::Nonsubset | OpKind::Hitting | OpKind::Closure if perm => {
                out.insert(s);
            }
            OpKind::Restrict if sized && !perm => {
                out.insert(s.union(x));
            }
            OpKind::Nonsuperset if perm => {
                out.insert(s.union(x));
            }
            OpKind::Maximal | OpKind::Minimal if sized => {
                // members {x_k} ∪ T of the witness family, T of size m not
                // meeting line k exactly once
                for k in (1..=2 * m).filter(|&k| line_hits(mask, m, k) != 1) {
                    let member = s.with(layout.pos(&format!("x{k}")));
                    if op == OpKind::Maximal {
                        out.insert(member.union(w));
                    } else {
                        out.insert(member);
                    }
                }
                if perm {
                    if op == OpKind::Maximal {
                        out.insert(s);
                    } else {
                        out.insert(s.union(w).union(x));
                    }
                }
            }
            _ => {}
        }
    }
    Ok(Some(out))
}
