#![allow(dead_code)]

use std::path::PathBuf;

use cstar_cli::expr::{BinOp, CmpOp, Expr, Var};
use proptest::prelude::*;

pub fn scenarios_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn bin_op(with_div: bool) -> BoxedStrategy<BinOp> {
    if with_div {
        prop_oneof![Just(BinOp::Add), Just(BinOp::Sub), Just(BinOp::Mul), Just(BinOp::Div)].boxed()
    } else {
        prop_oneof![Just(BinOp::Add), Just(BinOp::Sub), Just(BinOp::Mul)].boxed()
    }
}

fn cmp_op() -> impl Strategy<Value = CmpOp> {
    prop_oneof![
        Just(CmpOp::Eq),
        Just(CmpOp::Ne),
        Just(CmpOp::Lt),
        Just(CmpOp::Le),
        Just(CmpOp::Gt),
        Just(CmpOp::Ge),
    ]
}

/// Trees over the given leaves; literals are never negative, as in parsed input.
pub fn expr_over(leaf: BoxedStrategy<Expr>, with_div: bool) -> impl Strategy<Value = Expr> {
    leaf.prop_recursive(4, 24, 3, move |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            inner.clone().prop_map(|e| Expr::Abs(Box::new(e))),
            (bin_op(with_div), inner.clone(), inner.clone()).prop_map(|(op, a, b)| Expr::Bin(
                op,
                Box::new(a),
                Box::new(b)
            )),
            (cmp_op(), inner.clone(), inner.clone(), inner.clone(), inner).prop_map(|(op, l, r, t, o)| Expr::Cond {
                op,
                lhs: Box::new(l),
                rhs: Box::new(r),
                then: Box::new(t),
                otherwise: Box::new(o),
            }),
        ]
    })
}

/// Any literal a parser could produce, including tiny and huge magnitudes.
pub fn literal() -> impl Strategy<Value = f64> {
    use proptest::num::f64 as f;
    prop_oneof![
        f::POSITIVE | f::NORMAL | f::SUBNORMAL | f::ZERO,
        0.0f64..10.0,
        (0u32..100).prop_map(f64::from)
    ]
}

pub fn any_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        literal().prop_map(Expr::Num),
        Just(Expr::Var(Var::X)),
        Just(Expr::Var(Var::Y)),
    ];
    expr_over(leaf.boxed(), true)
}

/// Small, division-free expressions; total and finite on bounded inputs.
pub fn tame_expr(with_y: bool) -> impl Strategy<Value = Expr> {
    let leaf = if with_y {
        prop_oneof![
            (0.0f64..4.0).prop_map(Expr::Num),
            Just(Expr::Var(Var::X)),
            Just(Expr::Var(Var::Y))
        ]
        .boxed()
    } else {
        prop_oneof![(0.0f64..4.0).prop_map(Expr::Num), Just(Expr::Var(Var::X))].boxed()
    };
    expr_over(leaf, false)
}
