//! Bundled configurations: the `(333)` half Inoue surface, the two surfaces
//! `(522342)` and `(522332)` related by moving a blown-up point, and the odd
//! Inoue-Hirzebruch family with sequence `(n+2, 2, …, 2)`.

use serde::{Deserialize, Serialize};

use crate::cycle::{odd_ih_cycle, CycleConfig};
use crate::divisor::{MaximalDivisorConfig, TreeConfig};
use crate::error::{Error, Result};
use crate::lattice::ClassVector;

pub const NAMES: &[&str] = &["ex333", "ih522342", "kato522332", "oddih-N"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledClass {
    pub label: String,
    pub class: ClassVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Config {
    Divisor(MaximalDivisorConfig),
    Cycle(CycleConfig),
}

impl Config {
    pub fn cycle(&self) -> &CycleConfig {
        match self {
            Config::Divisor(d) => &d.cycle,
            Config::Cycle(c) => c,
        }
    }
}

/// A named class table together with the configuration it forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub fixture: String,
    pub n: usize,
    pub table: Vec<LabelledClass>,
    pub config: Config,
}

impl Fixture {
    pub fn label_of(&self, class: &ClassVector) -> Option<&str> {
        self.table
            .iter()
            .find(|e| &e.class == class)
            .map(|e| e.label.as_str())
    }

    pub fn class(&self, label: &str) -> Option<&ClassVector> {
        self.table.iter().find(|e| e.label == label).map(|e| &e.class)
    }
}

fn cv(v: &[i64]) -> ClassVector {
    ClassVector::new(v.to_vec()).expect("fixture classes are non-empty")
}

fn table(rows: &[&[i64]]) -> Vec<LabelledClass> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| LabelledClass {
            label: format!("D_{i}"),
            class: cv(r),
        })
        .collect()
}

fn pick(t: &[LabelledClass], idx: &[usize]) -> Vec<ClassVector> {
    idx.iter().map(|&i| t[i].class.clone()).collect()
}

/// `D_0 = e_0 - (e_1+e_2)`, `D_1 = e_1 - (e_2+e_0)`, `D_2 = e_2 - (e_0+e_1)`.
pub fn ex333_fixture() -> Fixture {
    let t = table(&[&[1, -1, -1], &[-1, 1, -1], &[-1, -1, 1]]);
    let cycle = CycleConfig::new(3, pick(&t, &[0, 1, 2])).expect("rank 3");
    Fixture {
        fixture: "ex333".into(),
        n: 3,
        table: t,
        config: Config::Cycle(cycle),
    }
}

pub fn ex333() -> CycleConfig {
    ex333_fixture().config.cycle().clone()
}

/// The table printed for `(522342)`. Read in the lattice, its six classes
/// close up into one cycle `D_0 D_4 D_1 D_2 D_3 D_5`.
pub fn ih522342_fixture() -> Fixture {
    let t = table(&[
        &[1, -1, -1, -1, -1, 0],
        &[0, 1, -1, 0, 0, 0],
        &[0, 0, 1, -1, 0, 0],
        &[0, 0, 0, 1, -1, -1],
        &[-1, -1, 0, 0, 1, -1],
        &[-1, 0, 0, 0, 0, 1],
    ]);
    let cycle = CycleConfig::new(6, pick(&t, &[0, 4, 1, 2, 3, 5])).expect("rank 6");
    Fixture {
        fixture: "ih522342".into(),
        n: 6,
        table: t,
        config: Config::Cycle(cycle),
    }
}

/// `(522332)`: cycle `D_0 + D_4` and the chain `D_5 D_3 D_2 D_1` on `D_0`.
pub fn kato522332_fixture() -> Fixture {
    let t = table(&[
        &[1, -1, -1, -1, -1, 0],
        &[0, 1, -1, 0, 0, 0],
        &[0, 0, 1, -1, 0, 0],
        &[0, 0, 0, 1, -1, -1],
        &[-1, 0, 0, 0, 1, -1],
        &[-1, 0, 0, 0, 0, 1],
    ]);
    let cycle = CycleConfig::new(6, pick(&t, &[0, 4]))
        .expect("rank 6")
        .with_alphas(vec![0, 4]);
    let tree = TreeConfig {
        chain: pick(&t, &[5, 3, 2, 1]),
        attach: 0,
    };
    Fixture {
        fixture: "kato522332".into(),
        n: 6,
        table: t,
        config: Config::Divisor(MaximalDivisorConfig::new(cycle, vec![tree]).expect("rank 6")),
    }
}

pub fn kato522332_cycle() -> CycleConfig {
    kato522332_fixture().config.cycle().clone()
}

pub fn kato522332_divisor() -> MaximalDivisorConfig {
    match kato522332_fixture().config {
        Config::Divisor(d) => d,
        Config::Cycle(_) => unreachable!("kato522332 carries a tree"),
    }
}

pub fn oddih_fixture(n: usize) -> Result<Fixture> {
    let cycle = odd_ih_cycle(n)?;
    let t = cycle
        .curves()
        .iter()
        .enumerate()
        .map(|(i, c)| LabelledClass {
            label: format!("D_{i}"),
            class: c.clone(),
        })
        .collect();
    Ok(Fixture {
        fixture: format!("oddih-{n}"),
        n,
        table: t,
        config: Config::Cycle(cycle),
    })
}

pub fn by_name(name: &str) -> Result<Fixture> {
    match name {
        "ex333" => Ok(ex333_fixture()),
        "ih522342" => Ok(ih522342_fixture()),
        "kato522332" => Ok(kato522332_fixture()),
        _ => {
            let n = name
                .strip_prefix("oddih-")
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
            oddih_fixture(n).map_err(|_| Error::UnknownFixture(name.to_string()))
        }
    }
}
