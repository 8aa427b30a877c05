use super::ast::CplxExpr;
use std::fmt;

const TOP: u8 = 0;
const MAX: u8 = 1;
const PLUS: u8 = 2;
const STAR: u8 = 3;
const POSTFIX: u8 = 4;

fn level(e: &CplxExpr) -> u8 {
    match e {
        CplxExpr::Lam { .. } => TOP,
        CplxExpr::Max(..) => MAX,
        CplxExpr::Plus(..) => PLUS,
        CplxExpr::App(..) => STAR,
        _ => POSTFIX,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &CplxExpr, min: u8) -> fmt::Result {
    if level(e) < min {
        f.write_str("(")?;
        write_expr(f, e)?;
        f.write_str(")")
    } else {
        write_expr(f, e)
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &CplxExpr) -> fmt::Result {
    use CplxExpr as C;
    match e {
        C::Var(x) => f.write_str(x),
        C::Nat(n) => write!(f, "{n}"),
        C::Plus(a, b) => {
            write_at(f, a, PLUS)?;
            f.write_str(" + ")?;
            write_at(f, b, STAR)
        }
        C::Max(a, b) => {
            write_at(f, a, MAX)?;
            f.write_str(" max ")?;
            write_at(f, b, PLUS)
        }
        C::App(a, b) => {
            write_at(f, a, STAR)?;
            f.write_str(" * ")?;
            write_at(f, b, POSTFIX)
        }
        C::Pair(a, b) => {
            f.write_str("(")?;
            write_expr(f, a)?;
            f.write_str(", ")?;
            write_expr(f, b)?;
            f.write_str(")")
        }
        C::Cost(a) => {
            write_at(f, a, POSTFIX)?;
            f.write_str("_c")
        }
        C::Pot(a) => {
            write_at(f, a, POSTFIX)?;
            f.write_str("_p")
        }
        C::Lam { binder, ty, body } => {
            write!(f, "λ*{binder}:{ty}. ")?;
            write_expr(f, body)
        }
        C::Dally(n, a) => {
            f.write_str("dally(")?;
            write_expr(f, n)?;
            f.write_str(", ")?;
            write_expr(f, a)?;
            f.write_str(")")
        }
        C::PCase {
            scrutinee,
            zero,
            p,
            ps,
            succ,
        } => {
            f.write_str("pcase ")?;
            write_at(f, scrutinee, MAX)?;
            f.write_str(" of (")?;
            write_expr(f, zero)?;
            write!(f, ", [{p}, {ps}] ")?;
            write_expr(f, succ)?;
            f.write_str(")")
        }
        C::PFold {
            scrutinee,
            zero,
            p,
            ps,
            w,
            succ,
        } => {
            f.write_str("pfold ")?;
            write_at(f, scrutinee, MAX)?;
            f.write_str(" of (")?;
            write_expr(f, zero)?;
            write!(f, ", [{p}, {ps}, {w}] ")?;
            write_expr(f, succ)?;
            f.write_str(")")
        }
    }
}

impl fmt::Display for CplxExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::ast::*;
    use super::super::types::PotTy;

    #[test]
    fn notation() {
        let e = pfold(
            pot(var("xs")),
            pair(plus(nat(2), cost(var("x"))), nat(1)),
            "p",
            "ps",
            "w",
            dally(
                plus(nat(4), cost(var("x"))),
                max(
                    pair(plus(nat(4), cost(var("x"))), plus(nat(2), var("ps"))),
                    pair(plus(nat(2), cost(var("w"))), plus(nat(1), pot(var("w")))),
                ),
            ),
        );
        assert_eq!(
            e.to_string(),
            "pfold xs_p of ((2 + x_c, 1), [p, ps, w] dally(4 + x_c, (4 + x_c, 2 + ps) max (2 + w_c, 1 + w_p)))"
        );
    }

    #[test]
    fn parenthesization() {
        let f = lam("x", PotTy::Nat, var("x"));
        assert_eq!(app(f.clone(), var("y")).to_string(), "(λ*x:N. x) * y");
        assert_eq!(cost(app(var("f"), var("y"))).to_string(), "(f * y)_c");
        assert_eq!(
            plus(nat(1), plus(nat(2), nat(3))).to_string(),
            "1 + (2 + 3)"
        );
        assert_eq!(
            max(max(nat(1), nat(2)), nat(3)).to_string(),
            "1 max 2 max 3"
        );
        assert_eq!(
            plus(max(nat(1), nat(2)), nat(3)).to_string(),
            "(1 max 2) + 3"
        );
    }
}
