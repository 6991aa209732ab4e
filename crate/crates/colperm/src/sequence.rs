//! Formula evaluation by name and comma-separated sequence export.

use colperm_core::formulas::{cor_full_union_count, cor_union_count, thm1_count, thm2_count, thm3_count};
use colperm_core::{BigCount, FamilyParams};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Formula {
    Thm1,
    Thm2,
    Thm3,
    Union,
    FullUnion,
}

/// Family parameters plus the union range, as given on the command line.
#[derive(Clone, Copy, Debug)]
pub struct FormulaArgs {
    pub k: u32,
    pub r: u32,
    pub d: u32,
    pub m: Option<u32>,
    pub a: Option<u32>,
    pub b: Option<u32>,
}

impl FormulaArgs {
    fn params(&self) -> Result<FamilyParams, CliError> {
        let p = FamilyParams::new(self.k, self.r, self.d)?;
        Ok(match self.m {
            Some(m) => p.with_m(m)?,
            None => p,
        })
    }
}

pub fn evaluate(formula: Formula, n: u32, args: &FormulaArgs) -> Result<BigCount, CliError> {
    let p = args.params()?;
    Ok(match formula {
        Formula::Thm1 => thm1_count(n, &p),
        Formula::Thm2 => thm2_count(n, &p)?,
        Formula::Thm3 => {
            // The middle-m count does not depend on m; default to 2.
            let p = if args.m.is_none() { p.with_m(2)? } else { p };
            thm3_count(n, &p)?
        }
        Formula::Union => {
            let (a, b) = args
                .a
                .zip(args.b)
                .ok_or_else(|| CliError::Usage("union needs --a and --b".into()))?;
            cor_union_count(n, a, b, &p)?
        }
        Formula::FullUnion => cor_full_union_count(n, &p)?,
    })
}

/// Terms for `n` in `from..=to`, comma-separated on one line.
pub fn run_sequence(formula: Formula, args: &FormulaArgs, from: u32, to: u32) -> Result<String, CliError> {
    if from > to {
        return Err(CliError::Usage(format!("empty range {from}..{to}")));
    }
    let terms = (from..=to)
        .map(|n| evaluate(formula, n, args).map(|v| v.to_decimal()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(terms.join(","))
}
