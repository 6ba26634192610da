//! Direct construction of the minimal automaton from residue classes.
//!
//! For a path length `A`, package `α < A` holds, for every `c` in `0..b^α`
//! divisible by `gcd(b^α, k)`, the residues `x` with `b^α·x + c ≡ 0 (mod k)`
//! that no earlier class claimed. These are the residues that reach zero
//! after exactly `α` more digits (spelling `c`) and no fewer. The final
//! package (the "etcetera" package, index `A`) does the same for every
//! admissible `c` in `0..k` and collects all leftovers.
//!
//! Package `α < A` has `λ(b^α, k)` classes and the etcetera package has
//! `λ(k, b^A)`. For `A = A₀` the nonempty classes are exactly the Nerode
//! classes, so they can serve as the states of the minimal automaton.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_integer::Integer;

use crate::automaton::{build_canonical, Dfa, DivSpec, Limits};
use crate::error::{Error, Result};
use crate::formula::{breakdown, gcd_pow_sequence};
use crate::minimize::{nerode_partition, StatePartition};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueClass {
    pub package: usize,
    pub constant: u64,
    /// Ascending; empty when every solution was claimed earlier.
    pub residues: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackagePartition {
    pub spec: DivSpec,
    pub a: usize,
    /// `packages[α]` for `α = 0..=a`; the last one is the etcetera package.
    pub packages: Vec<Vec<ResidueClass>>,
}

impl PackagePartition {
    pub fn etcetera(&self) -> &[ResidueClass] {
        &self.packages[self.a]
    }

    /// All classes in package order, empty ones included.
    pub fn classes(&self) -> impl Iterator<Item = &ResidueClass> {
        self.packages.iter().flatten()
    }

    pub fn nonempty_classes(&self) -> impl Iterator<Item = &ResidueClass> {
        self.classes().filter(|c| !c.residues.is_empty())
    }

    /// The nonempty classes as a partition of the residues `0..k`, block `i`
    /// being the `i`-th nonempty class in package order.
    pub fn to_state_partition(&self) -> StatePartition {
        let blocks = self
            .nonempty_classes()
            .map(|c| c.residues.iter().map(|&x| x as usize).collect())
            .collect();
        StatePartition::from_blocks(self.spec.modulus() as usize, blocks)
            .expect("package classes partition the residues")
    }

    /// One label per nonempty class, e.g. `pkg=1 c=2 {5,13}`. Classes of the
    /// etcetera package are marked `pkg=2*`.
    pub fn state_labels(&self) -> Vec<String> {
        self.nonempty_classes()
            .map(|class| {
                let star = if class.package == self.a { "*" } else { "" };
                format!(
                    "pkg={}{star} c={} {}",
                    class.package,
                    class.constant,
                    residue_set(&class.residues)
                )
            })
            .collect()
    }

    /// The package table, one package per block and one class per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (alpha, package) in self.packages.iter().enumerate() {
            let tag = if alpha == self.a { " (etcetera)" } else { "" };
            let _ = writeln!(out, "package {alpha}{tag}");
            for class in package {
                let _ = writeln!(out, "  c={} {}", class.constant, residue_set(&class.residues));
            }
        }
        out
    }
}

fn residue_set(residues: &[u64]) -> String {
    let inner: Vec<String> = residues.iter().map(u64::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

/// Modular inverse of `a` modulo `m`, for coprime `a` and `m`.
fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let egcd = (a as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(egcd.gcd, 1);
    egcd.x.rem_euclid(m as i128) as u64
}

pub fn build_packages(spec: DivSpec, a: usize, limits: &Limits) -> Result<PackagePartition> {
    let (b, k) = (spec.base(), spec.modulus());
    let residue_count = limits.states("modulus", k as u128)?;
    let powers = gcd_pow_sequence(spec);

    // Class counts per package, checked against the cap before enumerating.
    let mut counts = Vec::with_capacity(a + 1);
    let mut total: u128 = 0;
    let mut lam_bk: u128 = 1;
    for alpha in 0..=a {
        if alpha > 0 {
            let ratio = powers.at(alpha) / powers.at(alpha - 1);
            lam_bk = lam_bk.saturating_mul((b / ratio) as u128);
        }
        let count = if alpha < a {
            lam_bk
        } else {
            (k / powers.at(alpha)) as u128
        };
        total = total.saturating_add(count);
        limits.states("package class count", total)?;
        counts.push(count as u64);
    }

    let mut claimed = vec![false; residue_count];
    let mut packages = Vec::with_capacity(a + 1);
    let mut power_mod = 1 % k;
    for (alpha, &count) in counts.iter().enumerate() {
        let g = powers.at(alpha);
        debug_assert_eq!(power_mod.gcd(&k), g);
        let spacing = k / g;
        let inverse = mod_inverse((power_mod / g) % spacing, spacing);
        let mut classes = Vec::with_capacity(count as usize);
        for j in 0..count {
            // b^α·x ≡ −j·g (mod k)  ⇔  (b^α/g)·x ≡ −j (mod k/g)
            let constant = j.checked_mul(g).ok_or(Error::Capacity {
                what: "package constant",
                requested: j as u128 * g as u128,
                limit: u64::MAX as u128,
            })?;
            let target = (spacing - j % spacing) % spacing;
            let first = (target as u128 * inverse as u128 % spacing as u128) as u64;
            let mut residues = Vec::new();
            for i in 0..g {
                let x = first + i * spacing;
                if !std::mem::replace(&mut claimed[x as usize], true) {
                    residues.push(x);
                }
            }
            classes.push(ResidueClass {
                package: alpha,
                constant,
                residues,
            });
        }
        packages.push(classes);
        power_mod = ((power_mod as u128 * b as u128) % k as u128) as u64;
    }

    Ok(PackagePartition { spec, a, packages })
}

/// Builds the minimal automaton with one state per nonempty class of the
/// `A₀` packages. Also returns the packages, whose nonempty classes label
/// the states in order.
pub fn minimal_dfa_from_packages(spec: DivSpec, limits: &Limits) -> Result<(Dfa, PackagePartition)> {
    let (residue_count, sigma) = limits.check(spec)?;
    let a_zero = breakdown(spec).a_zero;
    let packages = build_packages(spec, a_zero, limits)?;

    let mut class_of = vec![usize::MAX; residue_count];
    let classes: Vec<&ResidueClass> = packages.nonempty_classes().collect();
    for (i, class) in classes.iter().enumerate() {
        for &x in &class.residues {
            class_of[x as usize] = i;
        }
    }

    let (b, k) = (spec.base() as u128, spec.modulus() as u128);
    let step = |x: u64, d: usize| ((b * x as u128 + d as u128) % k) as usize;
    let mut transitions = Vec::with_capacity(classes.len() * sigma);
    for (i, class) in classes.iter().enumerate() {
        let rep = class.residues[0];
        for d in 0..sigma {
            let target = class_of[step(rep, d)];
            if let Some(&other) = class.residues[1..]
                .iter()
                .find(|&&x| class_of[step(x, d)] != target)
            {
                return Err(Error::InconsistentPackages {
                    class: i,
                    digit: d,
                    residues: (rep, other),
                    targets: (target, class_of[step(other, d)]),
                });
            }
            transitions.push(target);
        }
    }

    let start = class_of[0];
    let mut accepting = vec![false; classes.len()];
    accepting[start] = true;
    let dfa = Dfa::from_parts(classes.len(), sigma, start, transitions, accepting);
    Ok((dfa, packages))
}

/// Outcome of comparing the package classes with the Nerode classes of the
/// canonical automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NerodeReport {
    pub spec: DivSpec,
    pub a_zero: usize,
    pub nerode: StatePartition,
    /// Nonempty classes at `A = A₀`.
    pub class_count: usize,
    /// The `A₀` class family equals the Nerode family.
    pub partition_matches: bool,
    /// For each `A ≤ A₀`: whether every class is nonempty.
    pub nonempty_up_to_cutoff: Vec<bool>,
    /// At `A = A₀`, no two etcetera classes are Nerode-equivalent.
    pub etcetera_inequivalent: bool,
    /// For `A = 0..=A₀+1`: whether the nonempty classes refine the Nerode
    /// partition.
    pub refines: Vec<bool>,
}

impl NerodeReport {
    pub fn passed(&self) -> bool {
        self.partition_matches
            && self.etcetera_inequivalent
            && self.nonempty_up_to_cutoff.iter().all(|&ok| ok)
            && self.refines.iter().all(|&ok| ok)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.partition_matches {
            out.push(format!(
                "package classes at A={} ({}) differ from the Nerode classes ({})",
                self.a_zero,
                self.class_count,
                self.nerode.len()
            ));
        }
        for (a, ok) in self.nonempty_up_to_cutoff.iter().enumerate() {
            if !ok {
                out.push(format!("A={a}: some classes are empty"));
            }
        }
        if !self.etcetera_inequivalent {
            out.push(format!("A={}: etcetera classes are not pairwise inequivalent", self.a_zero));
        }
        for (a, ok) in self.refines.iter().enumerate() {
            if !ok {
                out.push(format!("A={a}: classes do not refine the Nerode partition"));
            }
        }
        out
    }
}

pub fn verify_against_nerode(spec: DivSpec, limits: &Limits) -> Result<NerodeReport> {
    let canonical = build_canonical(spec, limits)?;
    let nerode = nerode_partition(&canonical)?;
    let a_zero = breakdown(spec).a_zero;

    let mut nonempty_up_to_cutoff = Vec::with_capacity(a_zero + 1);
    let mut refines = Vec::with_capacity(a_zero + 2);
    let mut at_cutoff = None;
    for a in 0..=a_zero + 1 {
        let packages = build_packages(spec, a, limits)?;
        refines.push(packages.to_state_partition().refines(&nerode));
        if a <= a_zero {
            nonempty_up_to_cutoff.push(packages.classes().all(|c| !c.residues.is_empty()));
        }
        if a == a_zero {
            at_cutoff = Some(packages);
        }
    }
    let packages = at_cutoff.expect("cutoff is within the scanned range");

    let partition = packages.to_state_partition();
    let etcetera_blocks: Vec<usize> = packages
        .etcetera()
        .iter()
        .filter(|c| !c.residues.is_empty())
        .map(|c| nerode.block_of(c.residues[0] as usize))
        .collect();
    let distinct: BTreeSet<usize> = etcetera_blocks.iter().copied().collect();

    Ok(NerodeReport {
        spec,
        a_zero,
        class_count: partition.len(),
        partition_matches: partition.same_family(&nerode),
        nonempty_up_to_cutoff,
        etcetera_inequivalent: distinct.len() == etcetera_blocks.len(),
        refines,
        nerode,
    })
}
