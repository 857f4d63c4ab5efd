use crate::algebra::{Elem, FiniteAlgebra};
use crate::congruence::Congruence;
use crate::error::{precondition, Error, Result};

use super::{demorgan_violation, dmm_signature, dunn_signature, dunn_violation, Dmm};

/// The Dunn monoid reduct, with `x → y = ¬(x · ¬y)`.
pub fn dunn_reduct(a: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    let o = Dmm::of(a)?;
    let r = FiniteAlgebra::from_fn(dunn_signature().clone(), a.size(), |op, v| match op {
        0 => a.apply2(o.fuse, v[0], v[1]),
        1 => a.apply1(o.neg, a.apply2(o.fuse, v[0], a.apply1(o.neg, v[1]))),
        2 => a.apply2(o.meet, v[0], v[1]),
        3 => a.apply2(o.join, v[0], v[1]),
        _ => a.constant(o.e),
    })?;
    match a.names() {
        Some(n) => r.with_names(n.to_vec()),
        None => Ok(r),
    }
}

/// Where an element of a reflection lives.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Part {
    Low(Elem),
    High(Elem),
    Bot,
    Top,
}

struct Layout {
    n: usize,
}

impl Layout {
    fn part(&self, x: Elem) -> Part {
        let n = self.n;
        if x < n {
            Part::Low(x)
        } else if x < 2 * n {
            Part::High(x - n)
        } else if x == 2 * n {
            Part::Bot
        } else {
            Part::Top
        }
    }

    fn high(&self, a: Elem) -> Elem {
        self.n + a
    }
}

/// Reflection of a Dunn monoid: the carrier is `A`, then a reversed copy
/// `A′` above it, then `⊥` and `⊤`. Negation swaps `a` and `a′`, `a·b′` is
/// `(a → b)′`, two primed elements fuse to `⊤`, `⊥` absorbs and `⊤`
/// absorbs everything else.
pub fn reflect(a: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    if let Some(fail) = dunn_violation(a)? {
        return Err(Error::Axiom {
            kind: "Dunn monoid",
            axiom: fail.axiom.to_string(),
        });
    }
    let (fuse, imp, meet, join, e) = (0, 1, 2, 3, a.constant(4));
    let n = a.size();
    let l = Layout { n };
    let (bot, top) = (2 * n, 2 * n + 1);
    let r = FiniteAlgebra::from_fn(dmm_signature().clone(), 2 * n + 2, |op, v| {
        use Part::*;
        match op {
            0 => match (l.part(v[0]), l.part(v[1])) {
                (Bot, _) | (_, Bot) => bot,
                (Top, _) | (_, Top) => top,
                (Low(x), Low(y)) => a.apply2(fuse, x, y),
                (Low(x), High(y)) | (High(y), Low(x)) => l.high(a.apply2(imp, x, y)),
                (High(_), High(_)) => top,
            },
            1 => match (l.part(v[0]), l.part(v[1])) {
                (Bot, _) | (_, Bot) => bot,
                (Top, _) => v[1],
                (_, Top) => v[0],
                (Low(x), Low(y)) => a.apply2(meet, x, y),
                (Low(x), High(_)) | (High(_), Low(x)) => x,
                (High(x), High(y)) => l.high(a.apply2(join, x, y)),
            },
            2 => match (l.part(v[0]), l.part(v[1])) {
                (Top, _) | (_, Top) => top,
                (Bot, _) => v[1],
                (_, Bot) => v[0],
                (Low(x), Low(y)) => a.apply2(join, x, y),
                (Low(_), High(y)) | (High(y), Low(_)) => l.high(y),
                (High(x), High(y)) => l.high(a.apply2(meet, x, y)),
            },
            3 => match l.part(v[0]) {
                Low(x) => l.high(x),
                High(x) => x,
                Bot => top,
                Top => bot,
            },
            _ => e,
        }
    })?;
    let names: Vec<String> = (0..n)
        .map(|x| a.label(x))
        .chain((0..n).map(|x| format!("{}'", a.label(x))))
        .chain(["bot".to_string(), "top".to_string()])
        .collect();
    r.with_names(names)
}

/// The congruence of `reflect(a)` that acts as `theta` on `A` and on `A′`
/// and keeps `⊥` and `⊤` apart from everything.
pub fn reflect_congruence(a: &FiniteAlgebra, theta: &Congruence) -> Result<Congruence> {
    if theta.len() != a.size() {
        return Err(precondition("partition is over a different carrier"));
    }
    theta.check_compatible(a)?;
    let k = theta.num_blocks();
    let labels: Vec<usize> = (0..a.size())
        .map(|x| theta.block_of(x))
        .chain((0..a.size()).map(|x| theta.block_of(x) + k))
        .chain([2 * k, 2 * k + 1])
        .collect();
    Ok(Congruence::from_labels(&labels))
}

/// `X(A)`: the reflection of the Dunn reduct of `A` with one extra
/// self-negating element `x` between `A` and `A′`. `x` absorbs the part
/// strictly between `⊥` and itself, sends everything above it to `⊤` and
/// is annihilated by `⊥`. It is the last element.
pub fn x_construction(a: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    Dmm::checked(a)?;
    let r = reflect(&dunn_reduct(a)?)?;
    let n = a.size();
    let l = Layout { n };
    let m = r.size();
    let x = m;
    let o = Dmm::of(&r)?;
    // position relative to x: -1 below, 1 above, 0 equal
    let side = |y: Elem| -> i8 {
        if y == x {
            0
        } else {
            match l.part(y) {
                Part::Bot | Part::Low(_) => -1,
                Part::High(_) | Part::Top => 1,
            }
        }
    };
    let bot = 2 * n;
    let top = 2 * n + 1;
    let out = FiniteAlgebra::from_fn(dmm_signature().clone(), m + 1, |op, v| {
        if v.iter().all(|&y| y != x) {
            return r.apply(op, v);
        }
        if op == o.neg {
            return x;
        }
        let other = if v[0] == x { v[1] } else { v[0] };
        match op {
            _ if op == o.fuse => match (other == bot, side(other)) {
                (true, _) => bot,
                (false, 1) => top,
                _ => x,
            },
            _ if op == o.meet => {
                if side(other) < 0 {
                    other
                } else {
                    x
                }
            }
            _ if op == o.join => {
                if side(other) > 0 {
                    other
                } else {
                    x
                }
            }
            _ => unreachable!("constants take no arguments"),
        }
    })?;
    let mut names: Vec<String> = r.names().expect("reflection is named").to_vec();
    names.push("x".into());
    let out = out.with_names(names)?;
    if let Some(fail) = demorgan_violation(&out)? {
        return Err(Error::Precondition(format!(
            "internal: X construction is not a De Morgan monoid ({} fails at {:?})",
            fail.axiom, fail.elements
        )));
    }
    Ok(out)
}
