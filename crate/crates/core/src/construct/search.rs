//! Exact search for label sequences along a path or around a cycle.
//!
//! Every constraint used by the face engines is local to four consecutive
//! positions, so a depth-first search that remembers failed
//! `(position, last three labels)` states is complete and runs in
//! `O(len · 8^3 · 8)` in the worst case. Labels are tried in ascending order,
//! so the first hit is the lexicographically smallest solution.

use crate::labeling::windows::{Label, Window4, MAX_LABEL};

/// Bit `x` allows label `x`; bit 7 marks a missing entry (a position that
/// exists only to shape windows).
pub type Domain = u8;

pub const ANY: Domain = 0x7f;
pub const ABSENT: Domain = 0x80;
const ABSENT_CODE: usize = 7;

pub fn only(x: Label) -> Domain {
    1 << x
}

pub fn without(d: Domain, x: Label) -> Domain {
    d & !(1 << x)
}

/// Set of acceptable windows, indexed by [`Window4::code`].
#[derive(Clone)]
pub struct WindowSet(pub Vec<bool>);

impl WindowSet {
    pub fn from_fn(f: impl Fn(Window4) -> bool) -> Self {
        WindowSet((0..4096).map(|c| f(Window4::from_code(c))).collect())
    }

    pub fn contains(&self, w: Window4) -> bool {
        self.0[w.code()]
    }

    pub fn len(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn members(&self) -> Vec<Window4> {
        (0..4096).filter(|&c| self.0[c]).map(Window4::from_code).collect()
    }
}

/// A line of positions with per-position domains, an L(2,1) condition between
/// positions at distance 1 and 2, and a window requirement on selected edges.
pub struct LineProblem<'a> {
    pub domains: Vec<Domain>,
    /// `required[e]` asks the window around edge `(e, e+1)` to lie in `windows`.
    pub required: Vec<bool>,
    pub windows: &'a WindowSet,
}

fn far(a: usize, b: usize) -> bool {
    a.abs_diff(b) >= 2
}

impl LineProblem<'_> {
    /// Lexicographically smallest assignment, `None` for missing entries.
    pub fn solve(&self) -> Option<Vec<Option<Label>>> {
        let len = self.domains.len();
        // Edges whose window is complete once position j is placed.
        let mut completes: Vec<Vec<usize>> = vec![Vec::new(); len];
        for (e, &req) in self.required.iter().enumerate() {
            if req {
                assert!(e + 1 < len, "edge {e} runs off the line");
                completes[(e + 2).min(len - 1)].push(e);
            }
        }

        let mut failed = vec![[0u64; 8]; len + 1];
        let is_failed = |f: &Vec<[u64; 8]>, p: usize, s: usize| f[p][s >> 6] >> (s & 63) & 1 == 1;
        let start = ABSENT_CODE * 73; // (absent, absent, absent)
        let mut states = vec![start];
        let mut next_try = vec![0usize];
        let mut picked: Vec<usize> = Vec::with_capacity(len);

        loop {
            let p = picked.len();
            if p == len {
                return Some(
                    picked.iter().map(|&x| (x != ABSENT_CODE).then_some(x as Label)).collect(),
                );
            }
            let s = states[p];
            let (a, b, c) = (s / 64, s / 8 % 8, s % 8);
            let mut chosen = None;
            for x in next_try[p]..8 {
                if self.domains[p] >> x & 1 == 0 {
                    continue;
                }
                let ns = (s % 64) * 8 + x;
                if is_failed(&failed, p + 1, ns) {
                    continue;
                }
                if x != ABSENT_CODE {
                    if c != ABSENT_CODE && !far(c, x) {
                        continue;
                    }
                    if b != ABSENT_CODE && b == x {
                        continue;
                    }
                }
                let ok = completes[p].iter().all(|&e| {
                    let w = if e + 2 == p { [a, b, c, x] } else { [b, c, x, ABSENT_CODE] };
                    let w = w.map(|t| (t != ABSENT_CODE).then_some(t as Label));
                    self.windows.contains(Window4(w))
                });
                if ok {
                    chosen = Some((x, ns));
                    break;
                }
            }
            match chosen {
                Some((x, ns)) => {
                    next_try[p] = x + 1;
                    picked.push(x);
                    states.push(ns);
                    next_try.push(0);
                }
                None => {
                    failed[p][s >> 6] |= 1 << (s & 63);
                    states.pop();
                    next_try.pop();
                    picked.pop()?;
                }
            }
        }
    }
}

/// Smallest cycle labeling `x_0 … x_{l−1}` with per-vertex domains, L(2,1)
/// around the cycle, and `required[i]` demanding the window of edge
/// `(x_i, x_{i+1})` lie in `windows`.
pub fn solve_cycle(domains: &[Domain], required: &[bool], windows: &WindowSet) -> Option<Vec<Label>> {
    let l = domains.len();
    assert!(l >= 3 && required.len() == l);
    // Unroll as x_0 … x_{l−1} x_0 x_1 x_2 with the first three fixed per try;
    // edge i sits at line index i, except edge 0 which uses the copy at l.
    let mut line_req = vec![false; l + 2];
    for (i, &r) in required.iter().enumerate() {
        if r {
            line_req[if i == 0 { l } else { i }] = true;
        }
    }
    let labels = |d: Domain| (0..=MAX_LABEL).filter(move |&x| d >> x & 1 == 1);
    for x0 in labels(domains[0]) {
        for x1 in labels(domains[1]).filter(|&x1| x0.abs_diff(x1) >= 2) {
            for x2 in labels(domains[2]).filter(|&x2| x1.abs_diff(x2) >= 2 && x2 != x0) {
                let mut doms = vec![only(x0), only(x1), only(x2)];
                doms.extend_from_slice(&domains[3..]);
                doms.extend([only(x0), only(x1), only(x2)]);
                let problem = LineProblem { domains: doms, required: line_req.clone(), windows };
                if let Some(sol) = problem.solve() {
                    return Some(sol[..l].iter().map(|x| x.unwrap()).collect());
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::windows::{is_attachable, is_cycle_extendable, CycleType};

    fn everything() -> WindowSet {
        WindowSet((0..4096).map(|_| true).collect())
    }

    #[test]
    fn smallest_path() {
        let p = LineProblem { domains: vec![ANY; 5], required: vec![false; 5], windows: &everything() };
        let sol: Vec<_> = p.solve().unwrap().into_iter().map(Option::unwrap).collect();
        assert_eq!(sol, vec![0, 2, 4, 0, 2]);
    }

    #[test]
    fn infeasible_domains() {
        let p = LineProblem {
            domains: vec![only(3), only(4)],
            required: vec![false; 2],
            windows: &everything(),
        };
        assert!(p.solve().is_none());
    }

    #[test]
    fn smallest_cycles() {
        let all = everything();
        assert_eq!(solve_cycle(&[ANY; 3], &[false; 3], &all).unwrap(), vec![0, 2, 4]);
        assert_eq!(solve_cycle(&[ANY; 6], &[false; 6], &all).unwrap(), vec![0, 2, 4, 0, 2, 4]);
        let c4 = solve_cycle(&[ANY; 4], &[false; 4], &all).unwrap();
        assert_eq!(c4, vec![0, 2, 4, 6]);
    }

    #[test]
    fn attachable_cycles_agree_with_predicate() {
        let att = WindowSet::from_fn(is_attachable);
        for l in 3..=12 {
            let sol = solve_cycle(&vec![ANY; l], &vec![true; l], &att).unwrap();
            assert!(is_cycle_extendable(&sol, CycleType::One).unwrap(), "l = {l}: {sol:?}");
        }
    }

    #[test]
    fn windows_with_missing_ends() {
        // A two-vertex line whose single edge must have a triangle and a square.
        let att = WindowSet::from_fn(is_attachable);
        let p = LineProblem {
            domains: vec![ABSENT, ANY, ANY, ABSENT],
            required: vec![false, true, false, false],
            windows: &att,
        };
        let sol = p.solve().unwrap();
        assert_eq!(sol[0], None);
        assert!(is_attachable(Window4([None, sol[1], sol[2], None])));
    }
}
