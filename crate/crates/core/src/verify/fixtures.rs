//! Expression fixtures shared by the round-trip suite and the CLI tests.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureKind {
    Elem,
    Witt,
    Symbol,
    Point,
}

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub field: &'static str,
    pub kind: FixtureKind,
    pub src: &'static str,
}

const fn fx(field: &'static str, kind: FixtureKind, src: &'static str) -> Fixture {
    Fixture { field, kind, src }
}

use FixtureKind::*;

pub const FIXTURES: &[Fixture] = &[
    fx("F2((t))", Elem, "t^-3 + t^-2"),
    fx("F2((t))", Elem, "1 + t + O(t^5)"),
    fx("F2((t))", Elem, "0"),
    fx("F4((t))", Elem, "g*t^-2 + (g + 1)*t"),
    fx("F3((t))", Elem, "2*t^-5 + t^-1 + 1"),
    fx("F9((t))", Elem, "(2*g + 1)*t^-4 + g"),
    fx("F2(u)((t))", Elem, "u*t^-2 + (1 + u)*t^-1"),
    fx("F2(u)((t))", Elem, "1/(1 + u)*t^-3"),
    fx("F2(u)", Elem, "(u^2 + 1)/(u + 1)"),
    fx("F2(x)", Elem, "1/x + x^3"),
    fx("F3(x,y)", Elem, "x*y + 2*y^2"),
    fx("F2(u)^perf", Elem, "u^(1/2) + u^(3/4)"),
    fx("F2((y))((x))", Elem, "y^-1*x^-3 + x"),
    fx("F2((t1))((t2))", Elem, "t1^-1*t2^-3 + t2^-1 + O(t2^4)"),
    fx("F4", Elem, "g + 1"),
    fx("F2((t))", Witt, "W(t^-3; 0)"),
    fx("F2((t))", Witt, "W(t^-1; t^-2 + 1)"),
    fx("F2((t))", Witt, "W(0; 0; t^-4)"),
    fx("F3((t))", Witt, "W(t^-1; 2*t^-2)"),
    fx("F2(x)", Witt, "W(1/x; 0)"),
    fx("F4((t))", Witt, "W(g*t^-3; t^-1)"),
    fx("F2(u)((t))", Symbol, "{1 + u*t; u}"),
    fx("F2((t1))((t2))", Symbol, "{1 + t1^-1*t2; t1}"),
    fx("F2((t))", Symbol, "{1 + t^3}"),
    fx("F2(x)", Point, "x; W(1/x; 0)"),
    fx("F2(x)", Point, "1/x"),
    fx("F3(x)", Point, "x^2 + 1; W(x^-1; 1); 1/(x^2 + 1)"),
];
