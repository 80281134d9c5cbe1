//! JSON records. Integers are emitted as exact JSON numbers of any size;
//! infinite valuations as the string `"inf"`.

use std::fmt::Display;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use quadval::{Classification, QuadraticPoly, TreeNode, Valuation, ValuationTree};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;

mod decimal {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
        Number::from_str(&x.to_string())
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Number::deserialize(d)?
            .to_string()
            .parse()
            .map_err(D::Error::custom)
    }
}

mod opt_decimal {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(x: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => super::decimal::serialize(x, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Option<T>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Option::<Number>::deserialize(d)?
            .map(|n| n.to_string().parse().map_err(D::Error::custom))
            .transpose()
    }
}

/// A valuation as a JSON number, or `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JsonValuation(pub Valuation);

impl Serialize for JsonValuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Valuation::Finite(v) => s.serialize_u64(v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for JsonValuation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(|v| JsonValuation(Valuation::Finite(v)))
                .ok_or_else(|| D::Error::custom(format!("bad valuation {n}"))),
            serde_json::Value::String(s) if s == "inf" => Ok(JsonValuation(Valuation::Infinite)),
            other => Err(D::Error::custom(format!("bad valuation {other}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    #[serde(with = "decimal")]
    pub a: BigInt,
    #[serde(with = "decimal")]
    pub b: BigInt,
    #[serde(with = "decimal")]
    pub c: BigInt,
    pub case: String,
    pub label: String,
    pub bounded: bool,
    pub even_offset: u64,
    pub ell: Option<u32>,
    #[serde(with = "opt_decimal")]
    pub delta: Option<BigInt>,
    pub m: Option<u8>,
    #[serde(with = "opt_decimal")]
    pub period: Option<BigUint>,
    pub infinite_branches: u8,
}

impl ClassRecord {
    pub fn new(cls: &Classification) -> Self {
        let (a, b, c) = cls.poly.coefficients();
        ClassRecord {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            case: cls.case.tag().to_string(),
            label: cls.case.label().to_string(),
            bounded: cls.is_bounded(),
            even_offset: cls.even_offset,
            ell: cls.ell(),
            delta: cls.delta().cloned(),
            m: cls.m(),
            period: cls.period.clone(),
            infinite_branches: cls.infinite_branches,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub residue: u64,
    pub valuation: JsonValuation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    #[serde(with = "decimal")]
    pub a: BigInt,
    #[serde(with = "decimal")]
    pub b: BigInt,
    #[serde(with = "decimal")]
    pub c: BigInt,
    pub ell: u32,
    pub period: u64,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqRow {
    pub n: u64,
    #[serde(with = "decimal")]
    pub value: BigInt,
    pub valuation: JsonValuation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqRecord {
    #[serde(with = "decimal")]
    pub a: BigInt,
    #[serde(with = "decimal")]
    pub b: BigInt,
    #[serde(with = "decimal")]
    pub c: BigInt,
    pub start: u64,
    pub rows: Vec<SeqRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeRecordNode {
    pub level: u32,
    #[serde(with = "decimal")]
    pub residue: BigUint,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuation: Option<u64>,
    pub children: Vec<TreeRecordNode>,
}

impl TreeRecordNode {
    fn new(tree: &ValuationTree, node: &TreeNode) -> Self {
        TreeRecordNode {
            level: node.level,
            residue: node.residue.clone(),
            status: node.status.name().to_string(),
            valuation: node.valuation().and_then(Valuation::finite),
            children: tree
                .children(node)
                .map(|kids| kids.iter().map(|k| TreeRecordNode::new(tree, k)).collect())
                .unwrap_or_default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeRecord {
    #[serde(with = "decimal")]
    pub a: BigInt,
    #[serde(with = "decimal")]
    pub b: BigInt,
    #[serde(with = "decimal")]
    pub c: BigInt,
    pub levels: Option<u32>,
    pub depth_cap: u32,
    pub root: TreeRecordNode,
}

impl TreeRecord {
    pub fn new(tree: &ValuationTree) -> Self {
        let (a, b, c) = tree.poly.coefficients();
        TreeRecord {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            levels: tree.levels,
            depth_cap: tree.depth_cap,
            root: TreeRecordNode::new(tree, tree.root()),
        }
    }
}

/// One line of `batch` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum BatchRecord {
    Ok {
        record: u64,
        classification: ClassRecord,
    },
    Err {
        record: u64,
        input: String,
        error: String,
    },
}

pub fn poly_fields(f: &QuadraticPoly) -> (BigInt, BigInt, BigInt) {
    let (a, b, c) = f.coefficients();
    (a.clone(), b.clone(), c.clone())
}
