//! Certified face engines: exact searches for child-face and attached-face
//! labelings, plus the window set they keep closed.
//!
//! A child face is glued onto a labeled face along a chord `(u1, u2)`. Its new
//! vertices `u3 … ul` are found by a line search over
//! `v2, u2, u3, …, ul, u1, v1`, the only labeled vertices within distance two
//! of the new ones.
//!
//! [`GOOD`] is the largest set of windows such that, for every child length
//! in [`CERTIFIED_LENGTHS`], a child face exists whose internal windows all
//! lie in the set again. Demanding it on every chord keeps the construction
//! from ever walking into a dead end.

use std::ops::RangeInclusive;

use once_cell::sync::Lazy;

use super::search::{only, solve_cycle, without, Domain, LineProblem, WindowSet, ANY};
use crate::labeling::windows::{
    cycle_window, is_attachable, sequence_is_valid, Label, Window4, MAX_LABEL,
};

/// Child-face lengths checked while computing [`GOOD`].
pub const CERTIFIED_LENGTHS: RangeInclusive<usize> = 3..=24;

/// Full, proper, attachable windows.
pub static ATTACHABLE: Lazy<WindowSet> = Lazy::new(|| {
    WindowSet::from_fn(|w| w.0.iter().all(Option::is_some) && sequence_is_valid(&w.0, false) && is_attachable(w))
});

/// Greatest self-supporting window set.
pub static GOOD: Lazy<WindowSet> = Lazy::new(|| certify(CERTIFIED_LENGTHS));

/// Greatest fixpoint of "every child length has an extension with all
/// internal windows in the set", starting from [`ATTACHABLE`].
pub fn certify(lengths: RangeInclusive<usize>) -> WindowSet {
    let mut set = ATTACHABLE.clone();
    loop {
        let next = WindowSet::from_fn(|w| {
            set.contains(w)
                && lengths.clone().all(|l| {
                    let demand = internal_demand(l);
                    solve_face(window_labels(w), l, &demand, &set).is_some()
                })
        });
        if next.len() == set.len() {
            return set;
        }
        set = next;
    }
}

fn window_labels(w: Window4) -> [Label; 4] {
    w.0.map(|x| x.expect("full window"))
}

/// Demand vector asking every internal edge `(u_i, u_{i+1})`, `3 ≤ i < l`,
/// to carry a certified window.
pub fn internal_demand(l: usize) -> Vec<bool> {
    (0..=l).map(|i| i >= 3 && i < l).collect()
}

/// Demand vector over every edge of the path `u2, u3, …, ul, u1`.
pub fn path_demand(l: usize) -> Vec<bool> {
    (0..=l).map(|i| i >= 2).collect()
}

fn face_line<'a>(window: [Label; 4], l: usize, demand: &[bool], set: &'a WindowSet) -> LineProblem<'a> {
    assert!(l >= 3, "faces have at least three vertices");
    assert_eq!(demand.len(), l + 1, "demand is indexed by u_i for i in 0..=l");
    let [v1, u1, u2, v2] = window;
    // Positions: v2 = 0, u2 = 1, u_i = i − 1 for 3 ≤ i ≤ l, u1 = l, v1 = l + 1.
    let mut domains: Vec<Domain> = vec![ANY; l + 2];
    domains[0] = only(v2);
    domains[1] = only(u2);
    domains[l] = only(u1);
    domains[l + 1] = only(v1);
    domains[2] = without(domains[2], u1);
    domains[l - 1] = without(domains[l - 1], u2);
    let mut required = vec![false; l + 2];
    for i in 2..=l {
        required[i - 1] = demand[i];
    }
    LineProblem { domains, required, windows: set }
}

/// Smallest labels for `u3 … ul` of a child face across the chord
/// `(u1, u2)` of `window = (v1, u1, u2, v2)`. `demand[i]` asks the window of
/// the edge `(u_i, u_{i+1})` to lie in `set`.
pub fn solve_face(window: [Label; 4], l: usize, demand: &[bool], set: &WindowSet) -> Option<Vec<Label>> {
    let sol = face_line(window, l, demand, set).solve()?;
    Some(sol[2..l].iter().map(|x| x.expect("interior positions are labeled")).collect())
}

/// Checks a proposed child-face labeling against the same constraints the
/// search uses.
pub fn check_face(window: [Label; 4], l: usize, labels: &[Label], demand: &[bool], set: &WindowSet) -> bool {
    if labels.len() + 2 != l || labels.iter().any(|&x| x > MAX_LABEL) {
        return false;
    }
    let [v1, u1, u2, v2] = window;
    let mut line = vec![Some(v2), Some(u2)];
    line.extend(labels.iter().map(|&x| Some(x)));
    line.extend([Some(u1), Some(v1)]);
    if !sequence_is_valid(&line, false) || labels[0] == u1 || labels[l - 3] == u2 {
        return false;
    }
    (2..=l).all(|i| !demand[i] || set.contains(Window4(std::array::from_fn(|k| line[i - 2 + k]))))
}

/// Domains for a face `x0 … x_{l−1}` attached through `x1` to a labeled
/// vertex `p` whose other neighbors carry `a` and `b`.
fn attach_domains(prefix: [Label; 3], l: usize) -> Vec<Domain> {
    let [a, p, b] = prefix;
    let mut domains = vec![ANY; l];
    let mut d1 = without(without(ANY, a), b);
    for x in 0..=MAX_LABEL {
        if x.abs_diff(p) < 2 {
            d1 = without(d1, x);
        }
    }
    domains[1] = d1;
    domains[0] = without(domains[0], p);
    domains[2] = without(domains[2], p);
    domains
}

/// Smallest labeling of the attached face; `demand[i]` refers to the cycle
/// edge `(x_i, x_{i+1 mod l})`.
pub fn solve_attach(prefix: [Label; 3], l: usize, demand: &[bool], set: &WindowSet) -> Option<Vec<Label>> {
    assert_eq!(demand.len(), l);
    solve_cycle(&attach_domains(prefix, l), demand, set)
}

pub fn check_attach(prefix: [Label; 3], labels: &[Label], demand: &[bool], set: &WindowSet) -> bool {
    let l = labels.len();
    if l < 3 || demand.len() != l || labels.iter().any(|&x| x > MAX_LABEL) {
        return false;
    }
    let cyc: Vec<Option<Label>> = labels.iter().map(|&x| Some(x)).collect();
    if !sequence_is_valid(&cyc, true) {
        return false;
    }
    let domains = attach_domains(prefix, l);
    if labels.iter().zip(&domains).any(|(&x, &d)| d >> x & 1 == 0) {
        return false;
    }
    (0..l).all(|i| !demand[i] || set.contains(cycle_window(labels, i)))
}

/// Cycle labeling of a root face whose chord edges (`demand[i]` for the edge
/// `(x_i, x_{i+1})`) must carry windows from `set`.
pub fn solve_root(l: usize, demand: &[bool], set: &WindowSet) -> Option<Vec<Label>> {
    solve_cycle(&vec![ANY; l], demand, set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::windows::is_path_extendable;

    #[test]
    fn certified_set_is_closed() {
        let good = &*GOOD;
        assert!(!good.is_empty());
        assert!(good.len() < ATTACHABLE.len());
        assert!(good.contains(Window4::full([4, 1, 5, 2])));
        for w in good.members() {
            assert!(good.contains(w.reversed()), "{w:?}");
            assert!(good.contains(w.complemented()), "{w:?}");
        }
    }

    #[test]
    fn certified_set_extends_past_checked_lengths() {
        let good = &*GOOD;
        for w in good.members() {
            for l in [25, 31, 40] {
                assert!(solve_face(window_labels(w), l, &internal_demand(l), good).is_some());
            }
        }
    }

    #[test]
    fn face_solutions_pass_the_checker_and_path_predicate() {
        let good = &*GOOD;
        for w in good.members().into_iter().step_by(7) {
            let win = window_labels(w);
            for l in 3..=10 {
                let demand = internal_demand(l);
                let sol = solve_face(win, l, &demand, good).unwrap();
                assert!(check_face(win, l, &sol, &demand, good));
                let demand = path_demand(l);
                let Some(sol) = solve_face(win, l, &demand, &ATTACHABLE) else { continue };
                assert!(check_face(win, l, &sol, &demand, &ATTACHABLE));
                if l >= 5 {
                    let mut inner = sol.clone();
                    inner.insert(0, win[2]);
                    inner.push(win[1]);
                    // Path u2, u3 … ul, u1 with pendants v2 and v1.
                    assert!(is_path_extendable(Some(win[3]), &inner, Some(win[0])).unwrap());
                }
            }
        }
    }

    #[test]
    fn small_faces_take_smallest_options() {
        let good = &*GOOD;
        assert_eq!(solve_face([0, 2, 4, 0], 3, &internal_demand(3), good), Some(vec![6]));
        // u3 = 1 is adjacent to u2 = 4, u4 = 5 to u1 = 2: the square pair (5, 1).
        assert_eq!(solve_face([0, 2, 4, 0], 4, &internal_demand(4), good), Some(vec![1, 5]));
    }

    #[test]
    fn attach_never_fails_for_valid_prefixes() {
        let good = &*GOOD;
        for a in 0..=6u8 {
            for p in 0..=6u8 {
                for b in 0..=6u8 {
                    if a.abs_diff(p) < 2 || b.abs_diff(p) < 2 || a == b {
                        continue;
                    }
                    for l in 3..=9 {
                        let demand: Vec<bool> = (0..l).map(|i| i >= 1 && i + 1 < l).collect();
                        let sol = solve_attach([a, p, b], l, &demand, good)
                            .unwrap_or_else(|| panic!("prefix {a} {p} {b}, l = {l}"));
                        assert!(check_attach([a, p, b], &sol, &demand, good));
                    }
                }
            }
        }
    }
}
