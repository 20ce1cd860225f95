//! The identity catalog: each identity is a pair of exact evaluators, a
//! brute-force left side and a closed-form right side, plus the grid sweep
//! that compares them.

mod ap;
mod catalog;
mod grid;
mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::rational::Rational;
use crate::triboncore::Index;

pub use ap::{
    ap_convergence_predicate, ap_genfun, ap_sum, ap_sum_undivided, half_weighted_series_value,
    weighted_power_sum,
};
pub use catalog::{check_domain, lhs_eval, rhs_eval, rhs_terms, D_EXCLUDED_R};
pub use grid::{
    default_grid, default_grids, load_grid_file, parse_grid_file, GridEntry, IntRange, ParamGrid,
};
pub use verify::{
    evaluate, first_counterexample, sweep, verify, verify_with, Counterexample, Instance, Outcome,
    RhsMutation, SkippedInstance, VerificationReport, VerifyOptions,
};

/// Identity tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IdentityId {
    W1,
    W2,
    W3,
    WP1,
    WP2,
    WP3,
    WP4,
    AP,
    APGF,
    AP1,
    AP1Z,
    APALT,
    APALTZ,
    J1,
    J2,
    J1Z,
    J2Z,
    B1,
    B2,
    B3,
    BP1,
    BP2,
    BP3,
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
    DEC,
    NEG,
    ADD,
}

/// A named parameter of an identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    M,
    K,
    T,
    R,
    X,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::M => "m",
            Param::K => "k",
            Param::T => "t",
            Param::R => "r",
            Param::X => "x",
        }
    }
}

use IdentityId::*;
use Param::{K, M, R, T, X};

impl IdentityId {
    pub const ALL: [IdentityId; 32] = [
        W1, W2, W3, WP1, WP2, WP3, WP4, AP, APGF, AP1, AP1Z, APALT, APALTZ, J1, J2, J1Z, J2Z, B1,
        B2, B3, BP1, BP2, BP3, D1, D2, D3, D4, D5, D6, DEC, NEG, ADD,
    ];

    pub fn name(self) -> &'static str {
        match self {
            W1 => "W1",
            W2 => "W2",
            W3 => "W3",
            WP1 => "WP1",
            WP2 => "WP2",
            WP3 => "WP3",
            WP4 => "WP4",
            AP => "AP",
            APGF => "APGF",
            AP1 => "AP1",
            AP1Z => "AP1Z",
            APALT => "APALT",
            APALTZ => "APALTZ",
            J1 => "J1",
            J2 => "J2",
            J1Z => "J1Z",
            J2Z => "J2Z",
            B1 => "B1",
            B2 => "B2",
            B3 => "B3",
            BP1 => "BP1",
            BP2 => "BP2",
            BP3 => "BP3",
            D1 => "D1",
            D2 => "D2",
            D3 => "D3",
            D4 => "D4",
            D5 => "D5",
            D6 => "D6",
            DEC => "DEC",
            NEG => "NEG",
            ADD => "ADD",
        }
    }

    /// Parameters in the order used for lexicographic sweeps.
    pub fn signature(self) -> &'static [Param] {
        match self {
            W1 | W2 | W3 | B1 | B2 | B3 => &[M, K],
            WP1 | WP2 | WP3 | WP4 | J1Z | J2Z | BP1 | BP2 | BP3 => &[K],
            AP => &[T, R, X, K],
            APGF | AP1 | APALT => &[T, R, K],
            AP1Z | APALTZ => &[T, K],
            J1 | J2 => &[R, K],
            D1 | D2 | D3 | D4 | D5 | D6 => &[R, M, K],
            DEC => &[T, M, R],
            NEG => &[M],
            ADD => &[M, R],
        }
    }

    /// Human-readable statement, ASCII only.
    pub fn statement(self) -> &'static str {
        match self {
            W1 => "sum_{j=0}^k 2^-j T(m-k-4+j) = 2 T(m-k-1) - 2^-k T(m)",
            W2 => "2 sum_{j=0}^k (-1)^j T(m-4k-1+4j) = (-1)^k T(m) + T(m-4k-4)",
            W3 => "sum_{j=0}^k 2^j T(m-3k+1+3j) = 2^(k+1) T(m) - T(m-3k-3)",
            WP1 => "sum_{j=0}^k 2^-j T(j) = 4 - 2^-k T(k+4)",
            WP2 => "sum_{j=0}^k 2^-j T(j) = G(1/2) - 2^-k T(k+4), G = x/(1-x-x^2-x^3), G(1/2) = 4",
            WP3 => "2 sum_{j=0}^k (-1)^j T(4j) = (-1)^k T(4k+1) - 1",
            WP4 => "sum_{j=0}^k 2^j T(3j) = 2^(k+1) T(3k-1)",
            AP => "(1 - l1 x - l2 x^2 - l3 x^3) sum_{j=0}^k x^j T(tj+r) = T(r) + (x l2 + x^2 l3) T(r-t) + x l3 T(r-2t) - x^(k+1) T((k+1)t+r) - x^(k+2) (l2 + x l3) T(kt+r) - x^(k+2) l3 T((k-1)t+r)",
            APGF => "[x^k] (T(r) + (x l2 + x^2 l3) T(r-t) + x l3 T(r-2t)) / (1 - l1 x - l2 x^2 - l3 x^3) = T(tk+r)",
            AP1 => "(l1+l2+l3-1) sum_{j=0}^k T(tj+r) = -T(r) - (l2+l3) T(r-t) - l3 T(r-2t) + T((k+1)t+r) + (l2+l3) T(kt+r) + l3 T((k-1)t+r)",
            AP1Z => "(l1+l2+l3-1) sum_{j=0}^k T(tj) = -(l2+l3)(T(t-1)^2 - T(t-2)T(t)) - l3 (T(2t-1)^2 - T(2t-2)T(2t)) + T((k+1)t) + (l2+l3) T(kt) + l3 T((k-1)t)",
            APALT => "(1+l1-l2+l3) sum_{j=0}^k (-1)^j T(tj+r) = T(r) + (l3-l2) T(r-t) - l3 T(r-2t) + (-1)^k T((k+1)t+r) + (-1)^k (l3-l2) T(kt+r) - (-1)^k l3 T((k-1)t+r)",
            APALTZ => "(1+l1-l2+l3) sum_{j=0}^k (-1)^j T(tj) = (l3-l2)(T(t-1)^2 - T(t-2)T(t)) - l3 (T(2t-1)^2 - T(2t-2)T(2t)) + (-1)^k T((k+1)t) + (-1)^k (l3-l2) T(kt) - (-1)^k l3 T((k-1)t)",
            J1 => "2 sum_{j=0}^k j T(j+r) = -T(r-2) + 3T(r+1) + (k-1) T(k+r-1) + (2k-1) T(k+r) + (k-2) T(k+r+1)",
            J2 => "2 sum_{j=0}^k j^2 T(j+r) = -3T(r-1) - 5T(r) - 6T(r+1) + (k^2-2k+3) T(k+r-1) + (2k^2-2k+5) T(k+r) + (k^2-4k+6) T(k+r+1)",
            J1Z => "2 sum_{j=0}^k j T(j) = 2 + (k-1) T(k-1) + (2k-1) T(k) + (k-2) T(k+1)",
            J2Z => "2 sum_{j=0}^k j^2 T(j) = -6 + (k^2-2k+3) T(k-1) + (2k^2-2k+5) T(k) + (k^2-4k+6) T(k+1)",
            B1 => "sum_{j=0}^k (-1)^j C(k,j) 2^j T(m-4k+3j) = (-1)^k T(m)",
            B2 => "sum_{j=0}^k C(k,j) T(m-3k+4j) = 2^k T(m)",
            B3 => "sum_{j=0}^k (-1)^j C(k,j) 2^-j T(m+3k+j) = 2^-k T(m)",
            BP1 => "sum_{j=0}^k (-1)^j C(k,j) 2^j T(3j) = (-1)^k T(4k)",
            BP2 => "sum_{j=0}^k C(k,j) T(4j) = 2^k T(3k)",
            BP3 => "sum_{j=0}^k (-1)^j C(k,j) 2^-j T(j) = 2^-k (T(3k-1)^2 - T(3k-2) T(3k))",
            D1 => "sum_{j,s} C(k,j) C(j,s) (T(r-1)+T(r))^(j-s) T(r+1)^s / T(r)^j T(m-(r+2)k+j+s) = T(m) / T(r)^k",
            D2 => "sum_{j,s} C(k,j) C(j,s) T(r)^(j-s) T(r+1)^s / (T(r-1)+T(r))^j T(m-(r+1)k-j+2s) = T(m) / (T(r-1)+T(r))^k",
            D3 => "sum_{j,s} C(k,j) C(j,s) T(r-1)^(j-s) (T(r-2)+T(r-1))^s / T(r)^j T(m-(r-1)k-2j+s) = T(m) / T(r)^k",
            D4 => "sum_{j,s} (-1)^s C(k,j) C(j,s) (T(r-1)+T(r))^(j-s) / T(r)^j T(m-2k+j+(r+1)s) = (-1)^k (T(r+1)/T(r))^k T(m)",
            D5 => "sum_{j,s} (-1)^s C(k,j) C(j,s) T(r+1)^(j-s) / T(r)^j T(m-k+2j+rs) = (-1)^k ((T(r-1)+T(r))/T(r))^k T(m)",
            D6 => "sum_{j,s} (-1)^s C(k,j) C(j,s) T(r+1)^(j-s) / (T(r-1)+T(r))^j T(m+k+j+rs) = (-1)^k (T(r)/(T(r-1)+T(r)))^k T(m)",
            DEC => "T(tm+r) = l1(t) T(t(m-1)+r) + l2(t) T(t(m-2)+r) + l3(t) T(t(m-3)+r)",
            NEG => "T(-m) = T(m-1)^2 - T(m-2) T(m)",
            ADD => "T(m+r) = T(r) T(m-2) + (T(r-1)+T(r)) T(m-1) + T(r+1) T(m)",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_uppercase();
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == wanted)
            .ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))
    }
}

/// Parameter values for one instance of an identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamAssignment {
    pub m: Option<Index>,
    pub k: Option<i64>,
    pub t: Option<Index>,
    pub r: Option<Index>,
    pub x: Option<Rational>,
}

impl ParamAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_m(mut self, m: Index) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_k(mut self, k: i64) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_t(mut self, t: Index) -> Self {
        self.t = Some(t);
        self
    }

    pub fn with_r(mut self, r: Index) -> Self {
        self.r = Some(r);
        self
    }

    pub fn with_x(mut self, x: Rational) -> Self {
        self.x = Some(x);
        self
    }

    pub fn has(&self, p: Param) -> bool {
        match p {
            Param::M => self.m.is_some(),
            Param::K => self.k.is_some(),
            Param::T => self.t.is_some(),
            Param::R => self.r.is_some(),
            Param::X => self.x.is_some(),
        }
    }

    fn int(&self, p: Param, v: Option<i64>) -> Result<i64> {
        v.ok_or_else(|| domain(format!("missing parameter {}", p.name())))
    }

    pub fn m(&self) -> Result<Index> {
        self.int(Param::M, self.m)
    }

    pub fn t(&self) -> Result<Index> {
        self.int(Param::T, self.t)
    }

    pub fn r(&self) -> Result<Index> {
        self.int(Param::R, self.r)
    }

    /// `k`, which must be non-negative.
    pub fn k(&self) -> Result<i64> {
        let k = self.int(Param::K, self.k)?;
        if k < 0 {
            return Err(domain("k must be a non-negative integer"));
        }
        Ok(k)
    }

    pub fn x(&self) -> Result<&Rational> {
        self.x.as_ref().ok_or_else(|| domain("missing parameter x"))
    }

    /// Present parameters as exact strings, keyed by name.
    pub fn to_strings(&self) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        for (p, v) in [
            (Param::M, self.m),
            (Param::K, self.k),
            (Param::T, self.t),
            (Param::R, self.r),
        ] {
            if let Some(v) = v {
                out.insert(p.name().to_string(), v.to_string());
            }
        }
        if let Some(x) = &self.x {
            out.insert("x".to_string(), x.to_string());
        }
        out
    }

    /// Compact `name=value` form in signature order, e.g. `m=3;k=2`.
    pub fn describe(&self, signature: &[Param]) -> String {
        let strings = self.to_strings();
        signature
            .iter()
            .filter_map(|p| strings.get(p.name()).map(|v| format!("{}={v}", p.name())))
            .collect::<Vec<_>>()
            .join(";")
    }
}
