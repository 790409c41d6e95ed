use std::collections::HashMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::gf2::{format_bits, parse_bits};
use crate::{Error, Result};

/// Widest input register accepted for truth tables.
pub const MAX_ORACLE_WIDTH: usize = 16;

/// Explicit truth table `f: {0,1}^n -> {0,1}^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanOracle {
    n: usize,
    output_bits: usize,
    values: Vec<u64>,
}

impl BooleanOracle {
    pub fn new(n: usize, output_bits: usize, values: Vec<u64>) -> Result<Self> {
        if n == 0 || n > MAX_ORACLE_WIDTH {
            return Err(Error::InvalidWidth(n));
        }
        if output_bits == 0 || output_bits > 64 {
            return Err(Error::InvalidWidth(output_bits));
        }
        if values.len() != 1 << n {
            return Err(Error::InvalidOracle(format!(
                "expected {} table entries, got {}",
                1usize << n,
                values.len()
            )));
        }
        if output_bits < 64 {
            if let Some(v) = values.iter().find(|&&v| v >> output_bits != 0) {
                return Err(Error::InvalidOracle(format!(
                    "output {v} does not fit in {output_bits} bits"
                )));
            }
        }
        Ok(Self {
            n,
            output_bits,
            values,
        })
    }

    pub fn from_fn(n: usize, output_bits: usize, f: impl Fn(u64) -> u64) -> Result<Self> {
        let values = if n <= MAX_ORACLE_WIDTH {
            (0..1u64 << n).map(f).collect()
        } else {
            Vec::new()
        };
        Self::new(n, output_bits, values)
    }

    /// Parses one `input output` bit-string pair per line.
    ///
    /// Blank lines and `#` comments are ignored; every input must appear
    /// exactly once and all outputs must share a width.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut output_bits = None;
        let mut entries: HashMap<u64, u64> = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::OracleParse {
                line: lineno + 1,
                message,
            };
            let mut parts = line.split_whitespace();
            let (input, output) = match (parts.next(), parts.next(), parts.next()) {
                (Some(i), Some(o), None) => (i, o),
                _ => return Err(err("expected \"<input> <output>\"".into())),
            };
            let width_in = *n.get_or_insert(input.len());
            let width_out = *output_bits.get_or_insert(output.len());
            if input.len() != width_in || output.len() != width_out {
                return Err(err("inconsistent bit-string width".into()));
            }
            let x = parse_bits(input).ok_or_else(|| err(format!("bad bit-string {input:?}")))?;
            let y = parse_bits(output).ok_or_else(|| err(format!("bad bit-string {output:?}")))?;
            if entries.insert(x, y).is_some() {
                return Err(err(format!("duplicate input {input}")));
            }
        }
        let n = n.ok_or_else(|| Error::InvalidOracle("empty truth table".into()))?;
        if n > MAX_ORACLE_WIDTH {
            return Err(Error::InvalidWidth(n));
        }
        let values = (0..1u64 << n)
            .map(|x| {
                entries.get(&x).copied().ok_or_else(|| {
                    Error::InvalidOracle(format!("missing input {}", format_bits(x, n)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, output_bits.unwrap_or(1), values)
    }

    /// Inverse of [`BooleanOracle::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (x, y) in self.values.iter().enumerate() {
            let _ = writeln!(
                out,
                "{} {}",
                format_bits(x as u64, self.n),
                format_bits(*y, self.output_bits)
            );
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn output_bits(&self) -> usize {
        self.output_bits
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.values[x as usize]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DjKind {
    Constant,
    Balanced,
}

/// One-bit oracle promised to be constant or balanced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DjOracle {
    table: BooleanOracle,
    kind: DjKind,
}

impl DjOracle {
    pub fn new(table: BooleanOracle) -> Result<Self> {
        if table.output_bits() != 1 {
            return Err(Error::InvalidOracle(
                "Deutsch-Jozsa oracles have one output bit".into(),
            ));
        }
        let ones = table.values().iter().filter(|&&v| v == 1).count();
        let total = table.values().len();
        let kind = if ones == 0 || ones == total {
            DjKind::Constant
        } else if 2 * ones == total {
            DjKind::Balanced
        } else {
            return Err(Error::InvalidOracle(format!(
                "neither constant nor balanced ({ones} of {total} outputs are 1)"
            )));
        };
        Ok(Self { table, kind })
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        Self::new(BooleanOracle::from_fn(n, 1, |_| value as u64)?)
    }

    /// Uniformly random balanced function.
    pub fn random_balanced<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        if n == 0 || n > MAX_ORACLE_WIDTH {
            return Err(Error::InvalidWidth(n));
        }
        let half = 1usize << (n - 1);
        let mut values: Vec<u64> = (0..2 * half).map(|i| (i < half) as u64).collect();
        values.shuffle(rng);
        Self::new(BooleanOracle::new(n, 1, values)?)
    }

    pub fn table(&self) -> &BooleanOracle {
        &self.table
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn kind(&self) -> DjKind {
        self.kind
    }
}

/// Two-to-one oracle with `f(x) = f(y) ⇔ y ∈ {x, x ⊕ s}`, `s ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimonOracle {
    table: BooleanOracle,
    period: u64,
}

impl SimonOracle {
    /// Derives the period from the table and validates the promise.
    ///
    /// Outputs must fit in `n` bits.
    pub fn new(table: BooleanOracle) -> Result<Self> {
        let n = table.n();
        if table.output_bits() > n {
            return Err(Error::InvalidOracle(format!(
                "output width {} exceeds input width {n}",
                table.output_bits()
            )));
        }
        let f0 = table.eval(0);
        let partners: Vec<u64> = (1..1u64 << n).filter(|&y| table.eval(y) == f0).collect();
        let period = match partners.as_slice() {
            [s] => *s,
            [] => return Err(Error::InvalidOracle("f is injective; no nonzero period".into())),
            _ => return Err(Error::InvalidOracle("f is not two-to-one".into())),
        };
        for x in 0..1u64 << n {
            let fx = table.eval(x);
            if table.eval(x ^ period) != fx {
                return Err(Error::InvalidOracle(format!(
                    "f({}) != f({} xor {})",
                    format_bits(x, n),
                    format_bits(x, n),
                    format_bits(period, n)
                )));
            }
        }
        // two-to-one: each value has exactly the pair {x, x ⊕ s} as preimage
        let mut counts: HashMap<u64, usize> = HashMap::new();
        for &v in table.values() {
            *counts.entry(v).or_default() += 1;
        }
        if counts.values().any(|&c| c != 2) {
            return Err(Error::InvalidOracle("f is not two-to-one".into()));
        }
        Ok(Self { table, period })
    }

    /// Like [`SimonOracle::new`] but also checks the declared period.
    pub fn with_period(table: BooleanOracle, period: u64) -> Result<Self> {
        let oracle = Self::new(table)?;
        if oracle.period != period {
            return Err(Error::InvalidOracle(format!(
                "declared period {} but table has period {}",
                format_bits(period, oracle.n()),
                format_bits(oracle.period, oracle.n())
            )));
        }
        Ok(oracle)
    }

    /// Random two-to-one function with period `s`: each coset `{x, x ⊕ s}`
    /// gets a distinct random label in `0..2^n`.
    pub fn random<R: Rng + ?Sized>(n: usize, period: u64, rng: &mut R) -> Result<Self> {
        if n == 0 || n > MAX_ORACLE_WIDTH {
            return Err(Error::InvalidWidth(n));
        }
        if period == 0 || period >> n != 0 {
            return Err(Error::InvalidOracle(format!("period {period} out of range")));
        }
        let mut labels: Vec<u64> = (0..1u64 << n).collect();
        labels.shuffle(rng);
        let mut values = vec![u64::MAX; 1 << n];
        let mut next = labels.into_iter();
        for x in 0..1u64 << n {
            if values[x as usize] == u64::MAX {
                let label = next.next().expect("2^n labels for 2^(n-1) cosets");
                values[x as usize] = label;
                values[(x ^ period) as usize] = label;
            }
        }
        Self::new(BooleanOracle::new(n, n, values)?)
    }

    pub fn table(&self) -> &BooleanOracle {
        &self.table
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn period(&self) -> u64 {
        self.period
    }
}
