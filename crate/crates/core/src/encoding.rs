//! The four partition-kernel encodings and experiment tables.
//!
//! `c_k[f](n) = sum_{j=1}^{n} f(j) K(n - j)` convolves a 1-indexed sequence
//! against a 0-indexed kernel `K`. Since `K(0) = 1` for every kernel, the
//! map is triangular with unit diagonal and convolving with the reciprocal
//! kernel undoes it.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{dirichlet_inverse_recursive, ArithmeticSequence, FunctionName};
use crate::error::{Error, Result};
use crate::golden::GoldenTable;
use crate::par::{self, Execution};
use crate::series::{kernel_set, KernelKind, KernelSet};

/// `c_k[f]` together with the kernel that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedSequence {
    values: ArithmeticSequence,
    source_name: String,
    kernel: KernelKind,
}

impl EncodedSequence {
    pub fn new(values: ArithmeticSequence, source_name: impl Into<String>, kernel: KernelKind) -> Self {
        EncodedSequence {
            values,
            source_name: source_name.into(),
            kernel,
        }
    }

    pub fn values(&self) -> &ArithmeticSequence {
        &self.values
    }

    pub fn into_values(self) -> ArithmeticSequence {
        self.values
    }

    pub fn source_name(&self) -> &str {
        &self.source_name
    }

    pub fn kernel(&self) -> KernelKind {
        self.kernel
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// `sum_{j=1}^{n} values(j) kernel(n - j)` for every `n`.
fn cauchy_encode(values: &ArithmeticSequence, kernel: &[BigInt], exec: Execution) -> ArithmeticSequence {
    let len = values.len();
    assert!(kernel.len() >= len, "kernel order below sequence length");
    let out = par::map_range(exec, 1..len + 1, |n| {
        let mut acc = BigInt::zero();
        for j in 1..=n {
            let v = values.at(j);
            let k = &kernel[n - j];
            if !v.is_zero() && !k.is_zero() {
                acc += v * k;
            }
        }
        acc
    });
    ArithmeticSequence::new(out).expect("non-empty input")
}

pub fn encode(f: &ArithmeticSequence, kind: KernelKind) -> EncodedSequence {
    encode_with(f, kind, &kernel_set(f.len()), Execution::default())
}

pub fn encode_with(f: &ArithmeticSequence, kind: KernelKind, kernels: &KernelSet, exec: Execution) -> EncodedSequence {
    let values = cauchy_encode(f, kernels.get(kind).coeffs(), exec);
    EncodedSequence::new(values, f.name().unwrap_or("f"), kind)
}

/// Inverts [`encode`] by convolving with the reciprocal kernel.
pub fn decode(c: &EncodedSequence) -> ArithmeticSequence {
    decode_with(c, &kernel_set(c.len()), Execution::default())
}

pub fn decode_with(c: &EncodedSequence, kernels: &KernelSet, exec: Execution) -> ArithmeticSequence {
    let values = cauchy_encode(&c.values, kernels.get(c.kernel.reciprocal()).coeffs(), exec);
    values.with_name(c.source_name.clone())
}

/// The ten value columns of an experiment table, after `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableColumn {
    F,
    C1F,
    C2F,
    C3F,
    C4F,
    FInv,
    C1FInv,
    C2FInv,
    C3FInv,
    C4FInv,
}

impl TableColumn {
    pub const ALL: [TableColumn; 10] = [
        TableColumn::F,
        TableColumn::C1F,
        TableColumn::C2F,
        TableColumn::C3F,
        TableColumn::C4F,
        TableColumn::FInv,
        TableColumn::C1FInv,
        TableColumn::C2FInv,
        TableColumn::C3FInv,
        TableColumn::C4FInv,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// CSV header name.
    pub fn header(self) -> &'static str {
        match self {
            TableColumn::F => "f",
            TableColumn::C1F => "c1_f",
            TableColumn::C2F => "c2_f",
            TableColumn::C3F => "c3_f",
            TableColumn::C4F => "c4_f",
            TableColumn::FInv => "finv",
            TableColumn::C1FInv => "c1_finv",
            TableColumn::C2FInv => "c2_finv",
            TableColumn::C3FInv => "c3_finv",
            TableColumn::C4FInv => "c4_finv",
        }
    }

    pub fn tex_header(self) -> &'static str {
        match self {
            TableColumn::F => "$f(n)$",
            TableColumn::C1F => "$c_1[f](n)$",
            TableColumn::C2F => "$c_2[f](n)$",
            TableColumn::C3F => "$c_3[f](n)$",
            TableColumn::C4F => "$c_4[f](n)$",
            TableColumn::FInv => "$f^{-1}(n)$",
            TableColumn::C1FInv => "$c_1[f^{-1}](n)$",
            TableColumn::C2FInv => "$c_2[f^{-1}](n)$",
            TableColumn::C3FInv => "$c_3[f^{-1}](n)$",
            TableColumn::C4FInv => "$c_4[f^{-1}](n)$",
        }
    }

    pub fn from_header(name: &str) -> Option<TableColumn> {
        TableColumn::ALL.into_iter().find(|c| c.header() == name)
    }

    /// The encoding kernel of this column, if it is an encoded column.
    pub fn kernel(self) -> Option<KernelKind> {
        match self {
            TableColumn::F | TableColumn::FInv => None,
            TableColumn::C1F | TableColumn::C1FInv => Some(KernelKind::Q),
            TableColumn::C2F | TableColumn::C2FInv => Some(KernelKind::QStar),
            TableColumn::C3F | TableColumn::C3FInv => Some(KernelKind::PStar),
            TableColumn::C4F | TableColumn::C4FInv => Some(KernelKind::P),
        }
    }

    /// The published c3 columns repeat the c1 columns, so they never match a
    /// genuine `p*` convolution.
    pub fn is_known_discrepant(self) -> bool {
        self.kernel() == Some(KernelKind::PStar)
    }
}

/// Full CSV header of an experiment table.
pub const TABLE_HEADER: &str = "n,f,c1_f,c2_f,c3_f,c4_f,finv,c1_finv,c2_finv,c3_finv,c4_finv";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub n: usize,
    /// Indexed by [`TableColumn::index`].
    pub cells: Vec<BigInt>,
}

impl TableRow {
    pub fn cell(&self, column: TableColumn) -> &BigInt {
        &self.cells[column.index()]
    }
}

/// An appendix-style table of `f`, `f^{-1}` and all eight encodings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableArtifact {
    pub function: String,
    pub rows: Vec<TableRow>,
}

impl TableArtifact {
    pub fn compare(&self, golden: &GoldenTable) -> TableComparison {
        let mut cells = Vec::with_capacity(self.rows.len() * TableColumn::ALL.len());
        for row in &self.rows {
            let expected = golden.row(row.n);
            for column in TableColumn::ALL {
                let actual = row.cell(column).clone();
                let status = match expected {
                    None => CellStatus::NoGolden,
                    Some(g) if g.cell(column) == &actual => CellStatus::Match,
                    Some(g) => CellStatus::Mismatch {
                        expected: g.cell(column).clone(),
                    },
                };
                cells.push(CellComparison {
                    n: row.n,
                    column,
                    actual,
                    status,
                });
            }
        }
        TableComparison { cells }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellStatus {
    Match,
    Mismatch { expected: BigInt },
    NoGolden,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComparison {
    pub n: usize,
    pub column: TableColumn,
    pub actual: BigInt,
    pub status: CellStatus,
}

impl CellComparison {
    pub fn is_mismatch(&self) -> bool {
        matches!(self.status, CellStatus::Mismatch { .. })
    }
}

/// Per-cell status of a computed table against golden data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableComparison {
    pub cells: Vec<CellComparison>,
}

impl TableComparison {
    pub fn status(&self, n: usize, column: TableColumn) -> Option<&CellStatus> {
        self.cells
            .iter()
            .find(|c| c.n == n && c.column == column)
            .map(|c| &c.status)
    }

    /// Mismatches outside the known-discrepant columns.
    pub fn blocking_mismatches(&self) -> impl Iterator<Item = &CellComparison> {
        self.cells.iter().filter(|c| c.is_mismatch() && !c.column.is_known_discrepant())
    }

    /// Mismatches in the known-discrepant c3 columns.
    pub fn known_discrepancies(&self) -> impl Iterator<Item = &CellComparison> {
        self.cells.iter().filter(|c| c.is_mismatch() && c.column.is_known_discrepant())
    }

    pub fn matched(&self) -> usize {
        self.cells.iter().filter(|c| c.status == CellStatus::Match).count()
    }

    pub fn is_clean(&self) -> bool {
        self.blocking_mismatches().next().is_none()
    }
}

/// Computes every column of the experiment table for a registry function.
pub fn experiment_table(name: &str, len: usize) -> Result<TableArtifact> {
    experiment_table_with(name.parse()?, len, Execution::default())
}

pub fn experiment_table_with(name: FunctionName, len: usize, exec: Execution) -> Result<TableArtifact> {
    let f = name.sequence(len)?;
    let finv = dirichlet_inverse_recursive(&f).map_err(|e| match e {
        Error::NonUnitLeadingValue(_) | Error::NotInvertible => Error::NotInvertible,
        other => other,
    })?;
    let kernels = kernel_set(len);
    let jobs: Vec<(&ArithmeticSequence, KernelKind)> = [&f, &finv]
        .into_iter()
        .flat_map(|seq| KernelKind::ALL.into_iter().map(move |k| (seq, k)))
        .collect();
    // Each encoding already fans out over n.
    let encoded = par::map_slice(exec, &jobs, |&(seq, kind)| {
        encode_with(seq, kind, &kernels, Execution::Sequential).into_values()
    });

    let rows = (1..=len)
        .map(|n| {
            let mut cells = Vec::with_capacity(10);
            cells.push(f.at(n).clone());
            cells.extend(encoded[..4].iter().map(|c| c.at(n).clone()));
            cells.push(finv.at(n).clone());
            cells.extend(encoded[4..].iter().map(|c| c.at(n).clone()));
            TableRow { n, cells }
        })
        .collect();
    Ok(TableArtifact {
        function: name.as_str().to_string(),
        rows,
    })
}
