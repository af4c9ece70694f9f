//! Hand-derived case tables for the two face engines.
//!
//! Each recipe reads the labeled context, picks a case, and writes labels
//! for the new face as short fixed prefixes followed by a repeating even
//! triple. Every free choice ("pick any even label outside …") is expanded
//! into all of its options, so a recipe returns a list of raw candidates.
//! Nothing here is trusted: the engine validates each candidate and falls
//! back to search when none survives.
//!
//! Child faces use the frame `window = (v1, u1, u2, v2)` and produce
//! `u3 … ul`. Attached faces use `prefix = (v1, v2, v3)` with `v2` adjacent
//! to `u2`, and produce `u1 … ul`.

use crate::labeling::windows::{available_neighbor_labels, triangle_attach_options, Label, Window4, EVENS, MAX_LABEL, ODDS};

const ODD_PAIRS: [(Label, Label); 6] = [(1, 3), (1, 5), (3, 1), (3, 5), (5, 1), (5, 3)];

/// `(u1, u2, v2) ↦ (u3, u4, u5, pattern)` for `l ≡ 2 (mod 3)`.
const TABLE_L2: [((Label, Label, Label), [Label; 3], [Label; 3]); 11] = [
    ((4, 6, 2), [1, 5, 2], [4, 6, 2]),
    ((0, 6, 2), [1, 5, 2], [0, 6, 2]),
    ((6, 0, 4), [3, 1, 4], [6, 0, 4]),
    ((2, 0, 4), [3, 1, 4], [2, 0, 4]),
    ((0, 2, 4), [5, 1, 4], [0, 2, 4]),
    ((0, 4, 2), [1, 6, 2], [0, 4, 2]),
    ((6, 4, 2), [1, 5, 2], [6, 4, 2]),
    ((0, 4, 6), [1, 3, 6], [0, 4, 6]),
    ((2, 4, 6), [1, 3, 6], [2, 4, 6]),
    ((4, 2, 0), [5, 3, 0], [4, 2, 0]),
    ((6, 2, 0), [5, 3, 0], [4, 2, 0]),
];

fn odd(x: Label) -> bool {
    x % 2 == 1
}

fn avail(x: Label) -> Vec<Label> {
    available_neighbor_labels(x as u32).expect("label in range")
}

fn evens_but(xs: &[Label]) -> Vec<Label> {
    EVENS.iter().copied().filter(|x| !xs.contains(x)).collect()
}

fn odds_but(xs: &[Label]) -> Vec<Label> {
    ODDS.iter().copied().filter(|x| !xs.contains(x)).collect()
}

/// Labels for positions `1 ..= l` of a face, written with overwrite
/// semantics. Frozen positions may only be rewritten with their own label;
/// anything else, or an index outside the face, spoils the draft.
#[derive(Clone)]
struct Draft {
    slot: Vec<Option<Label>>,
    frozen: usize,
    spoiled: bool,
}

impl Draft {
    fn face(l: usize, u1: Label, u2: Label) -> Self {
        let mut slot = vec![None; l + 1];
        slot[1] = Some(u1);
        slot[2] = Some(u2);
        Draft { slot, frozen: 2, spoiled: false }
    }

    fn cycle(l: usize) -> Self {
        Draft { slot: vec![None; l + 1], frozen: 0, spoiled: false }
    }

    fn l(&self) -> i64 {
        self.slot.len() as i64 - 1
    }

    fn set(&mut self, i: i64, x: Label) -> &mut Self {
        if i < 1 || i > self.l() {
            self.spoiled = true;
        } else if (i as usize) <= self.frozen {
            self.spoiled |= self.slot[i as usize] != Some(x);
        } else {
            self.slot[i as usize] = Some(x);
        }
        self
    }

    /// `u_from, u_{from+1}, …, u_to` take `p` cyclically; empty when `to < from`.
    fn up(&mut self, from: i64, to: i64, p: [Label; 3]) -> &mut Self {
        for (k, i) in (from..=to).enumerate() {
            self.set(i, p[k % 3]);
        }
        self
    }

    /// `u_from, u_{from−1}, …, u_to` take `p` cyclically; empty when `from < to`.
    fn down(&mut self, from: i64, to: i64, p: [Label; 3]) -> &mut Self {
        for (k, i) in (to..=from).rev().enumerate() {
            self.set(i, p[k % 3]);
        }
        self
    }

    fn finish(&self, out: &mut Vec<Vec<Label>>) {
        if self.spoiled {
            return;
        }
        let tail: Option<Vec<Label>> = self.slot[self.frozen + 1..].iter().copied().collect();
        if let Some(t) = tail {
            if self.frozen == 0 || !t.is_empty() {
                out.push(t);
            }
        }
    }
}

#[derive(Clone, Copy)]
struct Ctx {
    v1: Label,
    u1: Label,
    u2: Label,
    v2: Label,
    l: usize,
}

impl Ctx {
    fn draft(&self) -> Draft {
        Draft::face(self.l, self.u1, self.u2)
    }

    fn li(&self) -> i64 {
        self.l as i64
    }

    fn mirrored(&self) -> Ctx {
        Ctx { v1: self.v2, u1: self.u2, u2: self.u1, v2: self.v1, l: self.l }
    }
}

fn reversed_all(cands: Vec<Vec<Label>>) -> Vec<Vec<Label>> {
    cands
        .into_iter()
        .map(|mut c| {
            c.reverse();
            c
        })
        .collect()
}

/// All raw candidates for the child face across `(u1, u2)`, trying the
/// mirror and complement symmetries of the window.
pub fn face_candidates(window: [Label; 4], l: usize) -> Vec<Vec<Label>> {
    if l == 3 {
        return triangle_attach_options(Window4::full(window)).into_iter().map(|x| vec![x]).collect();
    }
    let mut out: Vec<Vec<Label>> = Vec::new();
    for mirror in [false, true] {
        for complement in [false, true] {
            let flip = |x: Label| if complement { MAX_LABEL - x } else { x };
            let [v1, u1, u2, v2] = window.map(flip);
            let mut ctx = Ctx { v1, u1, u2, v2, l };
            if mirror {
                ctx = ctx.mirrored();
            }
            let mut raw = extend_face(ctx);
            if mirror {
                raw = reversed_all(raw);
            }
            for c in raw {
                let c: Vec<Label> = c.into_iter().map(flip).collect();
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
    }
    out
}

fn extend_face(c: Ctx) -> Vec<Vec<Label>> {
    let odd_count = [c.v1, c.u1, c.u2, c.v2].into_iter().filter(|&x| odd(x)).count();
    let u_odd = [c.u1, c.u2].into_iter().filter(|&x| odd(x)).count();
    let mut out = Vec::new();
    match odd_count {
        0 | 1 => out = few_odd(c),
        2 | 3 if u_odd > 0 && c.l % 3 == 0 => out = zero_mod_odd(c),
        3 => {
            for a in EVENS {
                for b in evens_but(&[a]) {
                    out.extend(with_even_ends(c, a, b));
                }
            }
        }
        2 => match u_odd {
            2 => {
                for a in EVENS {
                    for b in evens_but(&[a]) {
                        out.extend(with_even_ends(c, a, b));
                    }
                }
            }
            1 if odd(c.u1) => {
                for a in avail(c.u1).into_iter().filter(|&x| x != c.u2) {
                    for b in evens_but(&[c.u2, c.v2, a]) {
                        out.extend(with_even_ends(c, b, a));
                    }
                }
            }
            0 => out = both_ends_odd(c),
            _ => {}
        },
        // All four odd: no case covers it.
        _ => {}
    }
    out
}

/// `u3 = a`, `ul = b` both even, at least one of `u1`, `u2` odd.
fn with_even_ends(c: Ctx, a: Label, b: Label) -> Vec<Vec<Label>> {
    let (l, li) = (c.l, c.li());
    let mut out = Vec::new();
    let base = || {
        let mut d = c.draft();
        d.set(3, a).set(li, b);
        d
    };
    if odd(c.u1) && odd(c.u2) {
        match l % 3 {
            2 => {
                for x in evens_but(&[a, b]) {
                    base().up(4, li - 1, [x, b, a]).set(li - 1, x).finish(&mut out);
                }
            }
            1 => {
                for x in evens_but(&[a, b]) {
                    let mut d = base();
                    if l >= 5 {
                        d.up(4, li - 1, [b, x, a]);
                    }
                    d.finish(&mut out);
                }
            }
            _ => {
                for y in evens_but(&[a]) {
                    for x in evens_but(&[a, y]) {
                        base().set(4, y).set(5, x).up(6, li - 1, [a, y, x]).finish(&mut out);
                    }
                }
            }
        }
        return out;
    }
    if !odd(c.u1) || odd(c.u2) {
        return out;
    }
    match l % 3 {
        0 => {
            let bb = c.u2;
            for x in evens_but(&[a, bb]) {
                base().set(4, x).set(5, bb).up(6, li - 1, [a, x, bb]).finish(&mut out);
            }
        }
        2 => match (c.u2, b) {
            (0, 2) | (2, 0) | (4, 6) | (6, 4) => {
                for x in evens_but(&[a, b, c.u2]) {
                    base().set(4, x).up(5, li - 1, [b, a, x]).finish(&mut out);
                }
            }
            (0, 6) => {
                if c.v2 != 5 {
                    base().set(3, 5).set(4, 1).up(5, li - 1, [6, 0, 2]).finish(&mut out);
                } else if c.v1 == 1 {
                    base().set(li, 5).set(li - 1, 2).set(li - 2, 4).down(li - 3, 3, [0, 2, 4]).finish(&mut out);
                } else if c.v1 == 5 {
                    base().set(li, 1).set(li - 1, 6).set(li - 2, 2).down(li - 3, 3, [0, 6, 2]).finish(&mut out);
                }
            }
            (6, 0) => {
                if c.v2 != 1 {
                    base().set(3, 1).set(4, 5).up(5, li - 1, [0, 4, 2]).finish(&mut out);
                } else if c.v1 == 5 {
                    if l >= 8 {
                        base().set(3, 2).set(4, 5).set(5, 1).up(6, li, [6, 4, 0]).finish(&mut out);
                    } else if l == 5 {
                        base().set(3, 2).set(5, 0).set(4, 4).finish(&mut out);
                    }
                } else if c.v1 == 1 {
                    base().set(li, 5).set(li - 1, 0).set(li - 2, 4).down(li - 3, 3, [6, 0, 4]).finish(&mut out);
                }
            }
            _ => {}
        },
        _ => {
            let mut d = base();
            if l >= 5 {
                d.up(4, li - 1, [b, c.u2, a]);
            }
            d.finish(&mut out);
        }
    }
    out
}

/// `l ≡ 0 (mod 3)` with at least one of `u1`, `u2` odd.
fn zero_mod_odd(c: Ctx) -> Vec<Vec<Label>> {
    let mut out = Vec::new();
    if odd(c.u1) && odd(c.u2) {
        if c.u1 > c.u2 {
            return out;
        }
        if !odd(c.v1) || !odd(c.v2) {
            for x in ODDS {
                for y in EVENS {
                    out.extend(odd_then_even(c, x, y));
                    out.extend(reversed_all(odd_then_even(c.mirrored(), x, y)));
                }
            }
        } else {
            let l2 = avail(c.u2);
            for x in avail(c.u1).into_iter().filter(|x| l2.contains(x)) {
                out.extend(with_even_ends(c, x, x));
            }
        }
    } else if odd(c.u1) {
        for y in ODDS {
            for x in evens_but(&[c.u2, c.v2]) {
                out.extend(reversed_all(odd_then_even(c.mirrored(), y, x)));
            }
        }
    }
    out
}

/// `l ≡ 0 (mod 3)`, `u3 = x` odd and `ul = y` even.
fn odd_then_even(c: Ctx, x: Label, y: Label) -> Vec<Vec<Label>> {
    let li = c.li();
    let mut out = Vec::new();
    let base = |x3: Label| {
        let mut d = c.draft();
        d.set(3, x3).set(li, y);
        d
    };
    if odd(c.u1) && odd(c.u2) {
        let l1 = avail(c.u1);
        for a in avail(x).into_iter().filter(|a| !l1.contains(a)) {
            for cc in avail(x).into_iter().filter(|&t| t != a) {
                for b in evens_but(&[y, a, cc]) {
                    base(x).up(4, li, [a, b, y]).finish(&mut out);
                }
            }
        }
        return out;
    }
    if odd(c.u1) {
        match (c.u1, x) {
            (5, 3) => base(x).up(4, li, [6, 0, 2]).finish(&mut out),
            (1, 3) => base(x).up(4, li, [0, 6, 4]).finish(&mut out),
            (3, 5) => base(if c.v2 != 6 { 6 } else { 4 }).up(4, li, [2, 0, 6]).finish(&mut out),
            (3, 1) => base(if c.v2 != 0 { 0 } else { 2 }).up(4, li, [4, 6, 0]).finish(&mut out),
            _ => {}
        }
        return out;
    }
    // u2 odd, u1 even.
    let first = |x3: Label, out: &mut Vec<Vec<Label>>| {
        let l3 = avail(x3);
        if !l3.contains(&c.u1) {
            return;
        }
        for b in l3.into_iter().filter(|&t| t != c.u1) {
            for a in evens_but(&[c.u1, b]) {
                for cc in evens_but(&[c.u1, a]) {
                    base(x3).up(4, li, [c.u1, a, cc]).finish(out);
                }
            }
        }
    };
    if avail(x).contains(&c.u1) {
        first(x, &mut out);
        return out;
    }
    match (c.u2, c.u1) {
        (1, 6) => {
            if c.v2 != 3 {
                first(3, &mut out);
            } else {
                base(4).up(4, li, [6, 2, 4]).finish(&mut out);
            }
        }
        (1, 4) if x == 3 => {
            if c.v1 == 0 {
                base(x).set(4, 5).up(5, li - 2, [2, 6, 4]).set(li - 1, 2).set(li, 6).finish(&mut out);
            } else {
                base(x).up(4, li, [6, 2, 0]).finish(&mut out);
            }
        }
        (1, 4) if x == 5 => {
            for a in evens_but(&[6, 4, c.v1]) {
                base(x).set(4, 3).up(5, li - 2, [6, a, 4]).set(li - 1, 6).set(li, a).finish(&mut out);
            }
        }
        (3, _) => {
            for x3 in ODDS {
                if avail(x3).contains(&c.u1) {
                    first(x3, &mut out);
                }
            }
        }
        (5, 0) => {
            if c.v2 != 3 {
                first(3, &mut out);
            } else if c.v1 != 2 {
                base(2).up(4, li, [0, 4, 2]).finish(&mut out);
            } else {
                base(2).up(4, li, [0, 6, 4]).finish(&mut out);
            }
        }
        (5, 2) if x == 1 => {
            for a in evens_but(&[0, 2, c.v1]) {
                base(x).set(4, 3).up(5, li - 2, [0, a, 2]).set(li - 1, 0).set(li, a).finish(&mut out);
            }
        }
        (5, 2) if x == 3 => {
            if c.v1 != 0 {
                base(x).set(4, 1).up(5, li - 3, [4, 0, 2]).set(li - 2, 4).set(li - 1, 0).finish(&mut out);
            } else {
                base(x).up(4, li, [0, 4, 6]).finish(&mut out);
            }
        }
        _ => {}
    }
    out
}

/// At most one odd label among `v1, u1, u2, v2`.
fn few_odd(c: Ctx) -> Vec<Vec<Label>> {
    let (l, li) = (c.l, c.li());
    let (v1, u1, u2, v2) = (c.v1, c.u1, c.u2, c.v2);
    let mut out = Vec::new();
    if odd(u1) || odd(u2) {
        if l % 3 == 0 {
            return zero_mod_odd(c);
        }
        if !odd(u1) {
            return out;
        }
        if l % 3 == 2 {
            for a in odds_but(&[u1]).into_iter().filter(|&a| avail(a).contains(&v2)) {
                for b in evens_but(&[v2, u2]) {
                    c.draft().set(li, a).set(li - 1, v2).set(3, b).up(4, li - 2, [v2, u2, b]).finish(&mut out);
                }
            }
        } else {
            for t in odds_but(&[u1]) {
                for a in avail(t).into_iter().filter(|&a| a != u2 && a != v2) {
                    c.draft()
                        .set(li, t)
                        .set(li - 1, a)
                        .set(li - 4, a)
                        .set(li - 2, u2)
                        .set(li - 3, v2)
                        .down(li - 5, 3, [u2, v2, a])
                        .finish(&mut out);
                }
            }
        }
        return out;
    }

    match l % 3 {
        0 => {
            if odd(v1) || odd(v2) {
                if !odd(v1) {
                    return out;
                }
                for a in evens_but(&[u1, u2, v2]) {
                    c.draft().set(3, a).up(4, li, [u1, u2, a]).finish(&mut out);
                }
                return out;
            }
            if u1 > u2 {
                return out;
            }
            match (u1, u2) {
                (0, 6) | (0, 2) => {
                    let l2 = avail(u2);
                    for a in avail(u1).into_iter().filter(|a| l2.contains(a)) {
                        c.draft().set(3, a).up(4, li, [u1, u2, v2]).finish(&mut out);
                    }
                }
                (4, 6) | (2, 6) => {
                    let tails: Vec<Label> = if v1 != v2 { vec![v2] } else { evens_but(&[u1, u2, v1]) };
                    for t in tails {
                        c.draft().set(3, 3).set(4, 1).set(5, 6).up(6, li - 1, [t, u1, 6]).set(li, t).finish(&mut out);
                    }
                }
                (0, 4) | (2, 4) if v1 == v2 => {
                    let (p3, p4, pat, end) = match (u1, v1) {
                        (0, 6) => (1, 3, [6, 2, 0], [6, 2]),
                        (0, 2) => (1, 5, [2, 6, 0], [2, 6]),
                        (2, 6) => (0, 3, [6, 0, 2], [6, 0]),
                        (2, 0) => (1, 5, [0, 6, 2], [0, 6]),
                        _ => return out,
                    };
                    // Pattern block shifted to end at u_{l−2}, so that u_{l−1}
                    // and u_l receive the closing pair.
                    c.draft().set(3, p3).set(4, p4).up(5, li - 2, pat).set(li - 1, end[0]).set(li, end[1]).finish(&mut out);
                }
                _ => {}
            }
        }
        1 => {
            const S1: [(Label, Label); 8] = [(6, 0), (0, 6), (2, 6), (6, 2), (0, 4), (4, 0), (4, 2), (2, 4)];
            let tails: Vec<Label> = if v1 != v2 { vec![v2] } else { evens_but(&[v2, u1, u2]) };
            for (p, q) in ODD_PAIRS {
                for &t in &tails {
                    let mut d = c.draft();
                    d.set(3, p).set(4, q).set(5, u1);
                    if S1.contains(&(u1, u2)) {
                        d.up(6, li - 2, [u2, t, u1]).set(li - 1, u2).set(li, t);
                    } else {
                        d.down(li, 8, [t, u2, u1]).set(7, t).set(6, u2);
                    }
                    d.finish(&mut out);
                }
            }
        }
        _ => {
            let near = |pairs: &[(Label, Label)]| pairs.contains(&(v2, u2));
            if near(&[(6, 0), (6, 2), (0, 4), (0, 6)]) {
                let fifths: Vec<Label> = if v1 != v2 { vec![v2] } else { evens_but(&[u1, u2, v2]) };
                for f5 in fifths {
                    for (p, q) in ODD_PAIRS {
                        c.draft().set(3, p).set(4, q).set(5, f5).up(6, li, [u1, u2, f5]).finish(&mut out);
                    }
                }
            } else if near(&[(4, 6), (2, 0)]) {
                if v1 != v2 {
                    for (p, q) in ODD_PAIRS {
                        c.draft().set(3, p).set(4, q).set(5, v2).up(6, li, [u1, u2, v2]).finish(&mut out);
                    }
                } else {
                    for a in evens_but(&[v2, u1, u2]) {
                        let f5 = match (v2, u2, u1) {
                            (4, 6, 2) | (2, 0, 4) => a,
                            (4, 6, 0) | (2, 0, 6) => v2,
                            _ => continue,
                        };
                        for (p, q) in ODD_PAIRS {
                            c.draft().set(3, p).set(4, q).set(5, f5).up(6, li, [u1, u2, a]).finish(&mut out);
                        }
                    }
                }
            } else if v1 != v2 {
                if (u1, u2, v2) == (6, 2, 4) {
                    if v1 != 1 {
                        c.draft().up(3, li - 3, [0, 6, 2]).set(li - 2, 0).set(li - 1, 3).set(li, 5).finish(&mut out);
                    } else {
                        c.draft().down(li, 6, [4, 2, 6]).set(5, 4).set(4, 0).set(3, 5).finish(&mut out);
                    }
                } else if let Some((_, head, pat)) = TABLE_L2.iter().find(|(k, _, _)| *k == (u1, u2, v2)) {
                    c.draft().set(3, head[0]).set(4, head[1]).set(5, head[2]).up(6, li, *pat).finish(&mut out);
                }
            } else {
                for a in evens_but(&[u1, u2, v2]) {
                    for (p, q) in ODD_PAIRS {
                        if near(&[(2, 6), (4, 0)]) {
                            c.draft().set(3, p).set(4, q).set(5, a).up(6, li, [u1, u2, a]).finish(&mut out);
                        } else if near(&[(2, 4), (4, 2), (6, 4), (0, 2)]) {
                            c.draft().set(li, p).set(li - 1, q).set(li - 2, a).down(li - 3, 3, [u2, u1, a]).finish(&mut out);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Both `v1`, `v2` odd, both `u1`, `u2` even.
fn both_ends_odd(c: Ctx) -> Vec<Vec<Label>> {
    let (l, li) = (c.l, c.li());
    let (u1, u2) = (c.u1, c.u2);
    let mut out = Vec::new();
    match l % 3 {
        0 => {
            // Routed through the even-ends case, which needs an odd u; nothing survives.
            for a in evens_but(&[u1, u2]) {
                out.extend(with_even_ends(c, a, a));
            }
        }
        1 => {
            if u2 > u1 {
                return out;
            }
            match (u1, u2) {
                (6, 4) | (6, 2) | (6, 0) | (4, 0) => {
                    for x in evens_but(&[u1, u2]) {
                        for (p, q) in ODD_PAIRS {
                            let mut d = c.draft();
                            d.set(3, x).set(4, p).set(5, q).set(6, u2);
                            if l == 7 {
                                d.set(7, x);
                            } else {
                                d.up(7, li - 1, [x, u1, u2]).set(li, x);
                            }
                            d.finish(&mut out);
                        }
                    }
                }
                (2, 0) => c.draft().set(li, 6).set(li - 1, 3).up(3, li - 2, [4, 2, 0]).finish(&mut out),
                (4, 2) => c
                    .draft()
                    .set(li, 6)
                    .set(li - 1, 3)
                    .set(li - 2, 1)
                    .down(li - 3, 5, [4, 0, 2])
                    .set(4, 4)
                    .set(3, 0)
                    .finish(&mut out),
                _ => {}
            }
        }
        _ => {
            if u1 > u2 {
                return out;
            }
            match (u1, u2) {
                (0, 2) | (0, 4) => {
                    for (p, q) in ODD_PAIRS {
                        c.draft().set(li, p).set(li - 1, q).set(li - 2, 6).down(li - 3, 3, [u2, u1, 6]).finish(&mut out);
                    }
                }
                (0, 6) => c.draft().down(li, 6, [4, 6, 0]).set(5, 4).set(4, 1).set(3, 3).finish(&mut out),
                (2, 6) | (4, 6) => {
                    for (p, q) in ODD_PAIRS {
                        c.draft().set(3, p).set(4, q).set(5, 0).up(6, li, [u1, u2, 0]).finish(&mut out);
                    }
                }
                (2, 4) => c.draft().set(3, 0).set(4, 5).set(5, 1).up(6, li, [4, 0, 6]).finish(&mut out),
                _ => {}
            }
        }
    }
    out
}

/// All raw candidates `u1 … ul` for a face attached through `u2` to the
/// middle of the labeled path `prefix = (v1, v2, v3)`.
pub fn attach_candidates(prefix: [Label; 3], l: usize) -> Vec<Vec<Label>> {
    let mut out: Vec<Vec<Label>> = Vec::new();
    for complement in [false, true] {
        let flip = |x: Label| if complement { MAX_LABEL - x } else { x };
        for c in attach_raw(prefix.map(flip), l) {
            let c: Vec<Label> = c.into_iter().map(flip).collect();
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out
}

fn attach_raw(prefix: [Label; 3], l: usize) -> Vec<Vec<Label>> {
    let [v1, v2, v3] = prefix;
    let li = l as i64;
    let mut out = Vec::new();
    let draft = || Draft::cycle(l);
    let outer_odd = [v1, v3].into_iter().filter(|&x| odd(x)).count();
    let all_odd = odd(v2) && outer_odd == 2;
    match l % 3 {
        0 => {
            if !odd(v2) {
                for a in evens_but(&[v1, v2, v3]) {
                    for b in evens_but(&[a, v2]) {
                        for x in evens_but(&[a, v2, b]) {
                            draft().set(1, b).set(2, a).set(3, x).up(4, li, [b, a, x]).finish(&mut out);
                        }
                    }
                }
            } else if outer_odd >= 1 {
                for a in avail(v2).into_iter().filter(|&a| a != v1 && a != v3) {
                    for b in evens_but(&[a]) {
                        for x in evens_but(&[a, b]) {
                            draft().set(1, b).set(2, a).set(3, x).up(4, li, [b, a, x]).finish(&mut out);
                        }
                    }
                }
            } else {
                for x in odds_but(&[v2]) {
                    let la = avail(x);
                    for (a, b) in [(la[0], la[1]), (la[1], la[0])] {
                        for y in evens_but(&[a, b]) {
                            draft().set(1, a).set(2, x).set(3, b).up(4, li, [a, y, b]).finish(&mut out);
                        }
                    }
                }
            }
        }
        1 => {
            if odd(v2) && !all_odd {
                for x in odds_but(&[v1, v2, v3]) {
                    let la = avail(x);
                    for (a, b) in [(la[0], la[1]), (la[1], la[0])] {
                        for y in evens_but(&[a, b]) {
                            draft().set(2, x).set(1, a).set(3, b).set(4, y).up(5, li, [a, b, y]).finish(&mut out);
                        }
                    }
                }
            } else if all_odd {
                let (x2, x1, xl, xl1, pat) = match v2 {
                    1 => (6, 3, 0, 2, [4, 0, 2]),
                    3 => (0, 5, 3, 6, [0, 2, 6]),
                    _ => (0, 3, 1, 6, [0, 2, 6]),
                };
                draft().set(2, x2).set(1, x1).set(li, xl).set(li - 1, xl1).down(li - 2, 3, pat).finish(&mut out);
            } else {
                for a in evens_but(&[v1, v2, v3]) {
                    let d = if a == 2 || a == 4 { avail(a)[0] } else { 3 };
                    for b in avail(d).into_iter().filter(|&b| b != a) {
                        for x in evens_but(&[a, b, v2]) {
                            // The pattern starts at u3; u2 already carries a.
                            draft().set(2, a).set(1, d).up(3, li - 2, [x, b, a]).set(li - 1, x).set(li, b).finish(&mut out);
                        }
                    }
                }
            }
        }
        _ => {
            if all_odd {
                let (x2, x1, tail, pat) = match v2 {
                    1 => (6, 3, [1, 4, 0], [6, 4, 0]),
                    3 => (6, 1, [5, 0, 2], [6, 0, 2]),
                    _ => (0, 3, [5, 2, 4], [0, 2, 4]),
                };
                draft()
                    .set(2, x2)
                    .set(1, x1)
                    .set(li, tail[0])
                    .set(li - 1, tail[1])
                    .set(li - 2, tail[2])
                    .down(li - 3, 3, pat)
                    .finish(&mut out);
            } else if odd(v2) {
                for x in odds_but(&[v1, v2, v3]) {
                    for y in odds_but(&[x, v2]) {
                        let (l1, l2) = (avail(y), avail(x));
                        let only1: Vec<Label> = l1.iter().copied().filter(|t| !l2.contains(t)).collect();
                        let mut picks = Vec::new();
                        if only1.len() == 2 {
                            for &a in &l1 {
                                for &b in l2.iter().filter(|&&b| b != a) {
                                    picks.push((a, b));
                                }
                            }
                        } else {
                            let only2: Vec<Label> = l2.iter().copied().filter(|t| !l1.contains(t)).collect();
                            for &b in &only2 {
                                for &a in &l1 {
                                    picks.push((a, b));
                                }
                            }
                        }
                        for (a, b) in picks {
                            let d = l1.iter().copied().find(|&t| t != a).expect("two available labels");
                            for z in evens_but(&[a, b, d]) {
                                draft().set(2, x).set(1, y).up(3, li, [b, z, a]).finish(&mut out);
                            }
                        }
                    }
                }
            } else {
                for a in evens_but(&[v1, v2, v3]) {
                    for d1 in ODDS {
                        for d2 in odds_but(&[d1]) {
                            if avail(d2).contains(&a) {
                                continue;
                            }
                            for b in avail(d2) {
                                for x in evens_but(&[a, b, v2]) {
                                    draft()
                                        .set(2, a)
                                        .set(1, d1)
                                        .set(li, d2)
                                        .set(3, x)
                                        .set(4, b)
                                        .up(5, li - 1, [a, x, b])
                                        .finish(&mut out);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Root face labels: `0 2 4` repeated for `l ≡ 0`; `3` then `6 4 0` repeated
/// for `l ≡ 1`; `3 1` then `4 2 0` repeated for `l ≡ 2`.
pub fn seed_labels(l: usize) -> Vec<Label> {
    let (head, pat): (&[Label], [Label; 3]) = match l % 3 {
        0 => (&[], [0, 2, 4]),
        1 => (&[3], [6, 4, 0]),
        _ => (&[3, 1], [4, 2, 0]),
    };
    let mut out = head.to_vec();
    out.extend((0..l - head.len()).map(|i| pat[i % 3]));
    out
}
