//! Local string-diagram calculus along a single wall.
//!
//! Read upwards, a wall line carries a word of string attachments: a string
//! labelled `x` meeting the wall from the left (`L(x)`) or from the right
//! (`R(x)`).  Adjacent attachments on the same side merge freely, and two
//! attachments on opposite sides may be slid past each other at the cost of
//! the wall's middle associator.  Every word is therefore a phase times the
//! canonical word `[L(total left), R(total right)]`; the phase is
//!
//! ```text
//! phi(w) = prod over pairs (R(h) earlier, L(g) later) of Omega(g, h)^-1
//! ```
//!
//! and two words with equal totals are related by `w = phi(w) / phi(w') w'`.
//! All phases are returned as exponents of `omega`.

use crate::arith::PrimeModulus;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    L,
    R,
}

/// One string attachment `L(x)` or `R(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Attach {
    pub side: Side,
    pub value: u32,
}

#[allow(non_snake_case)]
pub fn L(value: u32) -> Attach {
    Attach {
        side: Side::L,
        value,
    }
}

#[allow(non_snake_case)]
pub fn R(value: u32) -> Attach {
    Attach {
        side: Side::R,
        value,
    }
}

/// Exponent of `omega` in `phi(word)` for a wall with twist `q`.
pub fn word_phase(q: u32, word: &[Attach], p: PrimeModulus) -> u32 {
    if q == 0 {
        return 0;
    }
    let mut right = 0u32;
    let mut acc = 0u32;
    for a in word {
        match a.side {
            Side::R => right = p.add(right, a.value),
            Side::L => acc = p.add(acc, p.mul(a.value, right)),
        }
    }
    // Each pair contributes -q g h.
    p.neg(p.mul(q, acc))
}

/// Total left and right string labels of a word.
pub fn totals(word: &[Attach], p: PrimeModulus) -> (u32, u32) {
    word.iter().fold((0, 0), |(l, r), a| match a.side {
        Side::L => (p.add(l, a.value), r),
        Side::R => (l, p.add(r, a.value)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pm(p: u32) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn single_swap_costs_one_associator() {
        let p = pm(5);
        // [R(h), L(g)] = Omega(g,h)^-1 [L(g), R(h)], Omega = omega^(q g h).
        let (q, g, h) = (2, 3, 4);
        let e = word_phase(q, &[R(h), L(g)], p);
        assert_eq!(e, p.neg(p.mul(q, p.mul(g, h))));
        assert_eq!(word_phase(q, &[L(g), R(h)], p), 0);
    }

    proptest! {
        /// Merging two adjacent same-side attachments does not change phi.
        #[test]
        fn merging_is_free(vals in proptest::collection::vec((any::<bool>(), 0u32..5), 1..8), q in 0u32..5, at in 0usize..7) {
            let p = pm(5);
            let mut word: Vec<Attach> = vals.iter().map(|&(l, v)| if l { L(v) } else { R(v) }).collect();
            let at = at % word.len();
            let split = Attach { side: word[at].side, value: 1 };
            let before = word_phase(q, &word, p);
            word[at].value = p.sub(word[at].value, 1);
            word.insert(at + 1, split);
            prop_assert_eq!(word_phase(q, &word, p), before);
        }

        /// Sliding past on opposite sides changes phi by exactly one associator.
        #[test]
        fn swap_rule(vals in proptest::collection::vec((any::<bool>(), 0u32..5), 2..8), q in 0u32..5, at in 0usize..7) {
            let p = pm(5);
            let mut word: Vec<Attach> = vals.iter().map(|&(l, v)| if l { L(v) } else { R(v) }).collect();
            let i = at % (word.len() - 1);
            if word[i].side == Side::R && word[i + 1].side == Side::L {
                let (h, g) = (word[i].value, word[i + 1].value);
                let before = word_phase(q, &word, p);
                word.swap(i, i + 1);
                let after = word_phase(q, &word, p);
                prop_assert_eq!(p.sub(before, after), p.neg(p.mul(q, p.mul(g, h))));
            }
        }
    }
}
