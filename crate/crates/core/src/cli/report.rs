use std::collections::BTreeMap;
use std::fmt::{self, Display, Write as _};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CliError;
use crate::character::{
    subgroup_label, CharacterTable, CrossCheckReport, Decomposition, GradedDecomposition, PrimePowerReport,
};
use crate::exactalg::{divisors, IntMatrix};
use crate::fan::{Fan, ValidationLevel, ValidationReport};

/// Serializes through `Display` and `FromStr`, so every integer in the json
/// report is a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Decimal<T>(pub T);

impl<T: Display> Serialize for Decimal<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de, T: FromStr> Deserialize<'de> for Decimal<T>
where
    T::Err: Display,
{
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map(Decimal).map_err(serde::de::Error::custom)
    }
}

impl<T: Display> Display for Decimal<T> {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn dec<T: Clone>(xs: &[T]) -> Vec<Decimal<T>> {
    xs.iter().cloned().map(Decimal).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationSummary {
    pub requested: ValidationLevel,
    pub achieved: ValidationLevel,
    pub checks: Vec<String>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayRow {
    pub index: Decimal<usize>,
    pub vector: Vec<Decimal<BigInt>>,
    pub image: Decimal<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorRow {
    pub j: Decimal<u64>,
    pub element_order: Decimal<u64>,
    pub delta: Decimal<usize>,
    pub fixed_rays: Vec<Decimal<usize>>,
    pub facet_count: Decimal<usize>,
    pub f_vector: Vec<Decimal<u64>>,
    pub h_vector: Vec<Decimal<BigInt>>,
    pub q_coefficients: Vec<Decimal<BigInt>>,
    /// Keyed by cyclotomic index.
    pub cyclotomic_exponents: BTreeMap<String, Decimal<u32>>,
    pub graded: Vec<Decimal<BigInt>>,
    pub ungraded: Decimal<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionRow {
    pub l: Decimal<u64>,
    pub subgroup: String,
    /// `χ(c^l)`.
    pub value: Decimal<BigInt>,
    pub f_value: Decimal<BigInt>,
    pub multiplicity: Decimal<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictSummary {
    pub permutation: bool,
    pub witness: Option<Decimal<u64>>,
    pub witness_multiplicity: Option<Decimal<BigRational>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionSummary {
    pub rows: Vec<DecompositionRow>,
    pub verdict: VerdictSummary,
}

impl DecompositionSummary {
    fn from_decomposition(d: &Decomposition, values: &BTreeMap<u64, BigInt>) -> Self {
        let rows = d
            .multiplicities
            .iter()
            .map(|(&l, m)| DecompositionRow {
                l: Decimal(l),
                subgroup: subgroup_label(l, d.order),
                value: Decimal(values[&l].clone()),
                f_value: Decimal(d.f_values[&l].clone()),
                multiplicity: Decimal(m.clone()),
            })
            .collect();
        let verdict = match &d.verdict {
            crate::character::Verdict::Permutation => {
                VerdictSummary { permutation: true, witness: None, witness_multiplicity: None }
            }
            crate::character::Verdict::NotPermutation { witness, multiplicity } => VerdictSummary {
                permutation: false,
                witness: Some(Decimal(*witness)),
                witness_multiplicity: Some(Decimal(multiplicity.clone())),
            },
        };
        DecompositionSummary { rows, verdict }
    }

    /// `label:m` for each nonzero multiplicity.
    pub fn terms(&self) -> String {
        let terms: Vec<String> = self
            .rows
            .iter()
            .filter(|r| !r.multiplicity.0.is_zero())
            .map(|r| format!("{}:{}", r.subgroup, r.multiplicity))
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(", ")
        }
    }

    /// `Σ_{l | j} m_l · l == χ(c^j)` for every row `j`.
    fn reconstructs(&self) -> bool {
        self.rows.iter().all(|target| {
            let j = target.l.0;
            let sum: BigRational = self
                .rows
                .iter()
                .filter(|r| j % r.l.0 == 0)
                .map(|r| &r.multiplicity.0 * BigRational::from_integer(BigInt::from(r.l.0)))
                .sum();
            sum == BigRational::from_integer(target.value.0.clone())
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub degree: Decimal<usize>,
    pub decomposition: DecompositionSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePowerSummary {
    pub prime: Decimal<u64>,
    pub exponent: Decimal<u32>,
    pub differences_nonnegative: bool,
    pub graded_all_permutation: bool,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedSummary {
    pub degrees: Vec<DegreeRow>,
    pub all_permutation: bool,
    /// Present only when the group order is a prime power.
    pub prime_power: Option<PrimePowerSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorCheck {
    pub l: Decimal<u64>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientRow {
    pub l: Decimal<u64>,
    pub j: Decimal<u64>,
    pub graded: bool,
    pub quotient_formula: bool,
    pub valuation: bool,
    pub ungraded: bool,
    pub c_product: Decimal<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckSummary {
    pub q_formula: Vec<DivisorCheck>,
    pub valuation: Vec<DivisorCheck>,
    pub quotient: Vec<QuotientRow>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub name: Option<String>,
    pub dim: Decimal<usize>,
    pub order: Decimal<u64>,
    pub validation: ValidationSummary,
    pub rays: Vec<RayRow>,
    pub maximal_cones: Vec<Vec<Decimal<usize>>>,
    pub generator: Vec<Vec<Decimal<BigInt>>>,
    pub divisors: Vec<DivisorRow>,
    pub decomposition: DecompositionSummary,
    pub graded: Option<GradedSummary>,
    pub cross_check: Option<CrossCheckSummary>,
}

pub(super) struct ReportParts<'a> {
    pub name: Option<String>,
    pub fan: &'a Fan,
    pub generator: &'a IntMatrix,
    pub ray_perm: &'a [usize],
    pub validation: &'a ValidationReport,
    pub table: &'a CharacterTable,
    pub decomposition: &'a Decomposition,
    pub graded: Option<(&'a GradedDecomposition, Option<&'a PrimePowerReport>)>,
    pub cross_check: Option<&'a CrossCheckReport>,
}

impl Report {
    pub(super) fn build(p: ReportParts) -> Report {
        let n = p.table.order;
        let divisors_rows = p
            .table
            .entries
            .iter()
            .map(|(&j, e)| DivisorRow {
                j: Decimal(j),
                element_order: Decimal(e.cyclo.order),
                delta: Decimal(e.fixed.delta),
                fixed_rays: dec(&e.fixed.fixed_rays),
                facet_count: Decimal(crate::fan::facet_count(&e.fixed.complex)),
                f_vector: dec(&e.f_vector.counts),
                h_vector: dec(e.h_poly.coeffs()),
                q_coefficients: dec(e.q_poly.coeffs()),
                cyclotomic_exponents: e.cyclo.exponents.iter().map(|(k, &a)| (k.to_string(), Decimal(a))).collect(),
                graded: dec(e.graded.coeffs()),
                ungraded: Decimal(e.ungraded.clone()),
            })
            .collect();

        let graded = p.graded.map(|(g, pp)| GradedSummary {
            degrees: g
                .degrees
                .iter()
                .map(|d| DegreeRow {
                    degree: Decimal(d.degree),
                    decomposition: DecompositionSummary::from_decomposition(&d.decomposition, &d.character.values),
                })
                .collect(),
            all_permutation: g.all_permutation(),
            prime_power: pp.map(|r| PrimePowerSummary {
                prime: Decimal(r.prime),
                exponent: Decimal(r.exponent),
                differences_nonnegative: r.differences_nonnegative(),
                graded_all_permutation: r.graded_all_permutation,
                agree: r.agree(),
            }),
        });

        let per_divisor =
            |m: &BTreeMap<u64, bool>| m.iter().map(|(&l, &ok)| DivisorCheck { l: Decimal(l), ok }).collect();
        let cross_check = p.cross_check.map(|c| CrossCheckSummary {
            q_formula: per_divisor(&c.q_formula),
            valuation: per_divisor(&c.valuation),
            quotient: c
                .quotient
                .iter()
                .map(|q| QuotientRow {
                    l: Decimal(q.l),
                    j: Decimal(q.j),
                    graded: q.graded,
                    quotient_formula: q.quotient_formula,
                    valuation: q.valuation,
                    ungraded: q.ungraded,
                    c_product: Decimal(q.c_product.clone()),
                })
                .collect(),
            passed: c.passed(),
        });

        Report {
            name: p.name,
            dim: Decimal(p.fan.dim),
            order: Decimal(n),
            validation: ValidationSummary {
                requested: p.validation.requested,
                achieved: p.validation.achieved,
                checks: p.validation.checks.iter().map(|s| s.to_string()).collect(),
                warnings: p.validation.warnings.clone(),
            },
            rays: p
                .fan
                .rays
                .iter()
                .enumerate()
                .map(|(i, r)| RayRow { index: Decimal(i), vector: dec(r), image: Decimal(p.ray_perm[i]) })
                .collect(),
            maximal_cones: p.fan.maximal_cones.iter().map(|c| dec(c)).collect(),
            generator: p.generator.to_rows().iter().map(|r| dec(r)).collect(),
            divisors: divisors_rows,
            decomposition: DecompositionSummary::from_decomposition(p.decomposition, &p.table.ungraded().values),
            graded,
            cross_check,
        }
    }

    /// Re-checks the reconstruction identity of every decomposition.
    pub fn verify(&self) -> Result<(), CliError> {
        let n = self.order.0;
        let expected: Vec<u64> = divisors(n);
        let check = |what: &str, d: &DecompositionSummary| {
            let ls: Vec<u64> = d.rows.iter().map(|r| r.l.0).collect();
            if ls != expected {
                return Err(CliError::InternalInconsistency(format!("{what}: rows do not cover the divisors of {n}")));
            }
            if !d.reconstructs() {
                return Err(CliError::InternalInconsistency(format!(
                    "{what}: multiplicities do not reconstruct the character"
                )));
            }
            let integral_nonneg = d.rows.iter().all(|r| r.multiplicity.0.is_integer() && r.multiplicity.0 >= BigRational::zero());
            if integral_nonneg != d.verdict.permutation {
                return Err(CliError::InternalInconsistency(format!("{what}: verdict disagrees with multiplicities")));
            }
            Ok(())
        };
        check("ungraded decomposition", &self.decomposition)?;
        for (row, d) in self.divisors.iter().zip(&self.decomposition.rows) {
            if row.ungraded != d.value {
                return Err(CliError::InternalInconsistency(format!("ungraded value at c^{} disagrees", row.j)));
            }
        }
        if let Some(g) = &self.graded {
            for d in &g.degrees {
                check(&format!("degree {} decomposition", d.degree), &d.decomposition)?;
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        // Routing through `Value` sorts object keys.
        let value = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        if let Some(name) = &self.name {
            let _ = writeln!(w, "instance: {name}");
        }
        let _ = writeln!(w, "dimension: {}", self.dim);
        let _ = writeln!(w, "group order: {}", self.order);
        let _ = writeln!(
            w,
            "validation: {} (requested {}); checks: {}",
            self.validation.achieved,
            self.validation.requested,
            self.validation.checks.join(", ")
        );
        for warning in &self.validation.warnings {
            let _ = writeln!(w, "warning: {warning}");
        }
        let _ = writeln!(w, "\nrays (index: vector -> image)");
        for r in &self.rays {
            let v: Vec<String> = r.vector.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(w, "  {}: ({}) -> {}", r.index, v.join(", "), r.image);
        }
        let _ = writeln!(w, "\nper divisor");
        let _ = writeln!(w, "  {:>4} {:>5} {:>5} {:>6}  {:<14} {:<14} {:<20} {:<20} ungraded", "j", "ord", "delta", "facets", "f", "h", "Q", "graded");
        for row in &self.divisors {
            let list = |xs: &[Decimal<BigInt>]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            let f = row.f_vector.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            let _ = writeln!(
                w,
                "  {:>4} {:>5} {:>5} {:>6}  {:<14} {:<14} {:<20} {:<20} {}",
                row.j,
                row.element_order,
                row.delta,
                row.facet_count,
                f,
                list(&row.h_vector),
                list(&row.q_coefficients),
                list(&row.graded),
                row.ungraded
            );
        }
        write_decomposition(w, "ungraded character", &self.decomposition);
        if let Some(g) = &self.graded {
            for d in &g.degrees {
                write_decomposition(w, &format!("degree {}", d.degree), &d.decomposition);
            }
            let _ = writeln!(w, "\ngraded verdict: {}", if g.all_permutation { "Permutation in every degree" } else { "NotPermutation" });
            if let Some(pp) = &g.prime_power {
                let _ = writeln!(
                    w,
                    "prime power {}^{}: differences non-negative {}, graded permutation {}, agree {}",
                    pp.prime, pp.exponent, pp.differences_nonnegative, pp.graded_all_permutation, pp.agree
                );
            }
        }
        if let Some(c) = &self.cross_check {
            let _ = writeln!(w, "\ncross-check: {}", if c.passed { "all identities hold" } else { "FAILED" });
            let bad: Vec<String> = c
                .q_formula
                .iter()
                .filter(|x| !x.ok)
                .map(|x| format!("Q formula at l={}", x.l))
                .chain(c.valuation.iter().filter(|x| !x.ok).map(|x| format!("valuation at l={}", x.l)))
                .chain(
                    c.quotient
                        .iter()
                        .filter(|q| !(q.graded && q.quotient_formula && q.valuation && q.ungraded))
                        .map(|q| format!("quotient identity at l={}, j={}", q.l, q.j)),
                )
                .collect();
            for b in bad {
                let _ = writeln!(w, "  failed: {b}");
            }
            let _ = writeln!(w, "  {} quotient pairs checked", c.quotient.len());
        }
        out
    }
}

fn write_decomposition(w: &mut String, title: &str, d: &DecompositionSummary) {
    let _ = writeln!(w, "\n{title}");
    let _ = writeln!(w, "  {:>4} {:<8} {:>8} {:>8} {:>8}", "l", "subgroup", "value", "F", "m");
    for r in &d.rows {
        let _ = writeln!(w, "  {:>4} {:<8} {:>8} {:>8} {:>8}", r.l, r.subgroup, r.value, r.f_value, r.multiplicity);
    }
    let _ = writeln!(w, "  decomposition: {}", d.terms());
    match (&d.verdict.witness, &d.verdict.witness_multiplicity) {
        (Some(l), Some(m)) => {
            let _ = writeln!(w, "  verdict: NotPermutation (multiplicity {m} at l={l})");
        }
        _ => {
            let _ = writeln!(w, "  verdict: Permutation");
        }
    }
}
