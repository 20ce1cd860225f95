use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::triboncore::{Index, RangeGuard};

/// One summand `coefficient * X_{j - shift}` of a recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub shift: u32,
    pub coefficient: Rational,
}

impl Term {
    pub fn new(shift: u32, coefficient: Rational) -> Self {
        Term { shift, coefficient }
    }
}

/// `X_j = sum_m f_m X_{j - c_m}` with a contiguous window of seed values.
///
/// Terms keep the order they were given in; the generic second- and
/// third-order lemmas read `(a, f1), (b, f2), (c, f3)` positionally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSpec {
    terms: Vec<Term>,
    window_start: Index,
    window: Vec<Rational>,
}

impl RecurrenceSpec {
    /// Validates the terms and the seed window `X_{start}, X_{start+1}, ...`.
    ///
    /// The window must hold at least `max shift` values. Values past the first
    /// `max shift` are accepted only when they agree with the recurrence.
    pub fn new(terms: Vec<Term>, window_start: Index, window: Vec<Rational>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidSpec("at least one term is required".into()));
        }
        let mut shifts: Vec<u32> = terms.iter().map(|t| t.shift).collect();
        shifts.sort_unstable();
        if shifts[0] == 0 {
            return Err(Error::InvalidSpec("shifts must be positive".into()));
        }
        if shifts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSpec("shifts must be distinct".into()));
        }
        if terms.iter().any(|t| t.coefficient.is_zero()) {
            return Err(Error::InvalidSpec("coefficients must be nonzero".into()));
        }
        let span = *shifts.last().unwrap() as usize;
        if window.len() < span {
            return Err(Error::InvalidSpec(format!(
                "seed window holds {} values but the largest shift is {span}",
                window.len()
            )));
        }
        let spec = RecurrenceSpec {
            terms,
            window_start,
            window,
        };
        for i in span..spec.window.len() {
            let expected = spec.combine(|shift| spec.window[i - shift].clone());
            if expected != spec.window[i] {
                return Err(Error::InvalidSpec(format!(
                    "seed at index {} disagrees with the recurrence",
                    window_start + i as Index
                )));
            }
        }
        Ok(spec)
    }

    /// Builds a spec from an index-to-value map, which must cover a
    /// contiguous run of indices.
    pub fn from_seeds(terms: Vec<Term>, seeds: &BTreeMap<Index, Rational>) -> Result<Self> {
        let (&start, _) = seeds
            .iter()
            .next()
            .ok_or_else(|| Error::InvalidSpec("no seed values".into()))?;
        let contiguous = seeds.keys().zip(start..).all(|(&k, expect)| k == expect);
        if !contiguous {
            return Err(Error::InvalidSpec("seed indices must be contiguous".into()));
        }
        Self::new(terms, start, seeds.values().cloned().collect())
    }

    /// `T_j = T_{j-1} + T_{j-2} + T_{j-3}`, seeds `T_0..T_2`.
    pub fn tribonacci() -> Self {
        let ones = (1..=3).map(|s| Term::new(s, Rational::one())).collect();
        Self::new(ones, 0, vec![int(0), int(1), int(1)]).expect("valid spec")
    }

    /// `T_j = 2 T_{j-1} - T_{j-4}`, seeds `T_0..T_3`.
    pub fn tribonacci_two_term() -> Self {
        let terms = vec![Term::new(1, int(2)), Term::new(4, int(-1))];
        Self::new(terms, 0, vec![int(0), int(1), int(1), int(2)]).expect("valid spec")
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    pub fn max_shift(&self) -> usize {
        self.terms
            .iter()
            .map(|t| t.shift as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn window_start(&self) -> Index {
        self.window_start
    }

    pub fn window(&self) -> &[Rational] {
        &self.window
    }

    fn combine(&self, mut value_at_shift: impl FnMut(usize) -> Rational) -> Rational {
        self.terms
            .iter()
            .map(|t| &t.coefficient * value_at_shift(t.shift as usize))
            .sum()
    }

    /// `X_from ..= X_to`, extending the seed window forward by the recurrence
    /// and backward by solving for the most-shifted term.
    pub fn values(&self, from: Index, to: Index) -> Result<Vec<Rational>> {
        if from > to {
            return Ok(Vec::new());
        }
        let guard = RangeGuard::current();
        guard.check_iterative(from)?;
        guard.check_iterative(to)?;
        let start = self.window_start;
        let end = start + self.window.len() as Index - 1;
        let lo = from.min(start);
        let hi = to.max(end);
        let mut buf = vec![Rational::zero(); (hi - lo + 1) as usize];
        let offset = (start - lo) as usize;
        buf[offset..offset + self.window.len()].clone_from_slice(&self.window);

        for i in offset + self.window.len()..buf.len() {
            buf[i] = self.combine(|shift| buf[i - shift].clone());
        }

        let span = self.max_shift();
        let (lead, rest): (Vec<&Term>, Vec<&Term>) =
            self.terms.iter().partition(|t| t.shift as usize == span);
        let lead = &lead[0].coefficient;
        for i in (0..offset).rev() {
            // X_{i+span} = lead * X_i + sum_{rest} f X_{i+span-c}
            let top = i + span;
            let known: Rational = rest
                .iter()
                .map(|t| &t.coefficient * &buf[top - t.shift as usize])
                .sum();
            buf[i] = (&buf[top] - known) / lead;
        }

        let skip = (from - lo) as usize;
        Ok(buf
            .into_iter()
            .skip(skip)
            .take((to - from + 1) as usize)
            .collect())
    }

    /// `X_j`.
    pub fn eval(&self, j: Index) -> Result<Rational> {
        Ok(self.values(j, j)?.pop().expect("one value"))
    }

    pub fn to_json(&self) -> SpecJson {
        SpecJson {
            terms: self
                .terms
                .iter()
                .map(|t| TermJson {
                    shift: t.shift,
                    num: IntRepr::Str(t.coefficient.numer().to_string()),
                    den: IntRepr::Str(t.coefficient.denom().to_string()),
                })
                .collect(),
            seeds: self
                .window
                .iter()
                .zip(self.window_start..)
                .map(|(v, i)| {
                    (
                        i.to_string(),
                        FractionJson {
                            num: IntRepr::Str(v.numer().to_string()),
                            den: IntRepr::Str(v.denom().to_string()),
                        },
                    )
                })
                .collect(),
        }
    }

    pub fn from_json(json: &SpecJson) -> Result<Self> {
        let terms = json
            .terms
            .iter()
            .map(|t| Ok(Term::new(t.shift, fraction(&t.num, &t.den)?)))
            .collect::<Result<Vec<_>>>()?;
        let seeds = json
            .seeds
            .iter()
            .map(|(k, v)| {
                let index = k
                    .trim()
                    .parse::<Index>()
                    .map_err(|_| Error::Parse(format!("seed index {k:?}")))?;
                Ok((index, fraction(&v.num, &v.den)?))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Self::from_seeds(terms, &seeds)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let json: SpecJson = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("recurrence spec: {e}")))?;
        Self::from_json(&json)
    }
}

fn fraction(num: &IntRepr, den: &IntRepr) -> Result<Rational> {
    let (n, d) = (num.to_bigint()?, den.to_bigint()?);
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rational::new(n, d))
}

/// An integer written either as a decimal string (canonical) or a JSON
/// number (accepted on input).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntRepr {
    Str(String),
    Num(i64),
}

impl IntRepr {
    fn one() -> Self {
        IntRepr::Num(1)
    }

    pub fn to_bigint(&self) -> Result<BigInt> {
        match self {
            IntRepr::Num(n) => Ok(BigInt::from(*n)),
            IntRepr::Str(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("integer {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub shift: u32,
    pub num: IntRepr,
    #[serde(default = "IntRepr::one")]
    pub den: IntRepr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionJson {
    pub num: IntRepr,
    #[serde(default = "IntRepr::one")]
    pub den: IntRepr,
}

/// Wire form: `{"terms": [{"shift", "num", "den"}...], "seeds": {"index": {"num", "den"}}}`.
/// A missing `den` reads as 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecJson {
    pub terms: Vec<TermJson>,
    pub seeds: BTreeMap<String, FractionJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn tribonacci_spec_values() {
        let spec = RecurrenceSpec::tribonacci();
        assert_eq!(spec.eval(10).unwrap(), int(149));
        assert_eq!(spec.eval(-17).unwrap(), int(0));
        assert_eq!(spec.eval(-3).unwrap(), int(-1));
        let two = RecurrenceSpec::tribonacci_two_term();
        for j in -30..=30 {
            assert_eq!(two.eval(j).unwrap(), spec.eval(j).unwrap(), "j = {j}");
        }
    }

    #[test]
    fn geometric_order_one() {
        let spec = RecurrenceSpec::new(vec![Term::new(1, int(2))], 0, vec![int(1)]).unwrap();
        assert_eq!(spec.eval(5).unwrap(), int(32));
        assert_eq!(spec.eval(-2).unwrap(), ratio(1, 4));
    }

    #[test]
    fn rejects_bad_specs() {
        let one = || vec![int(1)];
        assert!(RecurrenceSpec::new(vec![], 0, one()).is_err());
        assert!(RecurrenceSpec::new(vec![Term::new(0, int(1))], 0, one()).is_err());
        assert!(RecurrenceSpec::new(vec![Term::new(1, int(0))], 0, one()).is_err());
        assert!(
            RecurrenceSpec::new(vec![Term::new(1, int(1)), Term::new(1, int(2))], 0, one())
                .is_err()
        );
        assert!(RecurrenceSpec::new(vec![Term::new(2, int(1))], 0, one()).is_err());
        // extra seed inconsistent with X_j = 2 X_{j-1}
        assert!(RecurrenceSpec::new(vec![Term::new(1, int(2))], 0, vec![int(1), int(3)]).is_err());
        assert!(RecurrenceSpec::new(vec![Term::new(1, int(2))], 0, vec![int(1), int(2)]).is_ok());
    }

    #[test]
    fn seeds_must_be_contiguous() {
        let terms = vec![Term::new(2, int(1))];
        let gap: BTreeMap<_, _> = [(0, int(1)), (2, int(1))].into_iter().collect();
        assert!(RecurrenceSpec::from_seeds(terms.clone(), &gap).is_err());
        let ok: BTreeMap<_, _> = [(-1, int(1)), (0, int(1))].into_iter().collect();
        assert!(RecurrenceSpec::from_seeds(terms, &ok).is_ok());
    }

    #[test]
    fn json_wire_form() {
        let text = r#"{
            "terms": [{"shift": 1, "num": "3", "den": "2"}, {"shift": 2, "num": -5, "den": 1}],
            "seeds": {"-1": {"num": "0", "den": "1"}, "0": {"num": 1, "den": 1}}
        }"#;
        let spec = RecurrenceSpec::from_json_str(text).unwrap();
        assert_eq!(spec.window_start(), -1);
        assert_eq!(spec.terms()[0].coefficient, ratio(3, 2));
        let round = RecurrenceSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(round, spec);
        let wire = serde_json::to_value(spec.to_json()).unwrap();
        assert_eq!(wire["terms"][1]["num"], "-5");
        assert!(RecurrenceSpec::from_json_str("{\"terms\": []}").is_err());
    }
}
