//! Transcribed appendix tables used as golden data.
//!
//! Each fixture is a CSV file with header [`TABLE_HEADER`] and one row per
//! `n`. The c3 columns are kept as printed even though they are known not to
//! match a `p*` convolution; see [`TableColumn::is_known_discrepant`].

use std::path::Path;

use num_bigint::BigInt;

use crate::arith::FunctionName;
use crate::encoding::{TableColumn, TableRow, TABLE_HEADER};
use crate::error::{Error, Result};

const EMBEDDED: [&str; 6] = [
    include_str!("../fixtures/table1.csv"),
    include_str!("../fixtures/table2.csv"),
    include_str!("../fixtures/table3.csv"),
    include_str!("../fixtures/table4.csv"),
    include_str!("../fixtures/table5.csv"),
    include_str!("../fixtures/table6.csv"),
];

/// Appendix table ids in order.
pub const TABLE_IDS: [u8; 6] = [1, 2, 3, 4, 5, 6];

/// Registry function tabulated by appendix table `id`.
pub fn table_function(id: u8) -> Result<FunctionName> {
    Ok(match id {
        1 => FunctionName::Phi,
        2 => FunctionName::DivisorCount,
        3 => FunctionName::OmegaPlusOne,
        4 => FunctionName::DoubleFactorialOdd,
        5 => FunctionName::QStarSeq,
        6 => FunctionName::PartitionSeq,
        _ => return Err(Error::Domain(format!("no appendix table {id}; ids are 1..=6"))),
    })
}

/// Appendix table id for a registry function, if it has one.
pub fn table_id_for(name: FunctionName) -> Option<u8> {
    TABLE_IDS.into_iter().find(|&id| table_function(id).ok() == Some(name))
}

/// Number of printed rows: six for the double-factorial table, ten otherwise.
pub fn printed_rows(id: u8) -> usize {
    if id == 4 {
        6
    } else {
        10
    }
}

pub fn fixture_file_name(id: u8) -> String {
    format!("table{id}.csv")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenTable {
    pub id: u8,
    pub rows: Vec<TableRow>,
}

impl GoldenTable {
    /// The copy compiled into the crate.
    pub fn embedded(id: u8) -> Result<Self> {
        table_function(id)?;
        Self::from_csv(id, EMBEDDED[id as usize - 1])
    }

    /// `table{id}.csv` from a fixtures directory.
    pub fn load(dir: &Path, id: u8) -> Result<Self> {
        table_function(id)?;
        let text = std::fs::read_to_string(dir.join(fixture_file_name(id)))?;
        Self::from_csv(id, &text)
    }

    pub fn from_csv(id: u8, text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().from_reader(text.as_bytes());
        let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
        if header.join(",") != TABLE_HEADER {
            return Err(Error::Fixture(format!("table {id}: unexpected header `{}`", header.join(","))));
        }
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Fixture(format!("table {id}: bad integer `{s}`")))
            };
            let n = record[0]
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::Fixture(format!("table {id}: bad index `{}`", &record[0])))?;
            let cells = record.iter().skip(1).map(parse).collect::<Result<Vec<_>>>()?;
            rows.push(TableRow { n, cells });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.n != i + 1 {
                return Err(Error::Fixture(format!("table {id}: row {} has n = {}", i + 1, row.n)));
            }
        }
        Ok(GoldenTable { id, rows })
    }

    pub fn row(&self, n: usize) -> Option<&TableRow> {
        n.checked_sub(1).and_then(|i| self.rows.get(i))
    }

    pub fn column(&self, column: TableColumn) -> Vec<BigInt> {
        self.rows.iter().map(|r| r.cell(column).clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sha2::{Digest, Sha256};
    use std::path::PathBuf;

    fn fixtures_dir() -> PathBuf {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
    }

    #[test]
    fn fixtures_match_recorded_checksums() {
        let sums = std::fs::read_to_string(fixtures_dir().join("SHA256SUMS")).unwrap();
        let mut seen = 0;
        for line in sums.lines() {
            let (digest, name) = line.split_once("  ").unwrap();
            let bytes = std::fs::read(fixtures_dir().join(name)).unwrap();
            let actual: String = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
            assert_eq!(actual, digest, "{name} changed");
            seen += 1;
        }
        assert_eq!(seen, TABLE_IDS.len());
    }

    #[test]
    fn embedded_tables_equal_files_on_disk() {
        for id in TABLE_IDS {
            assert_eq!(GoldenTable::load(&fixtures_dir(), id).unwrap(), GoldenTable::embedded(id).unwrap());
        }
    }

    #[test]
    fn embedded_tables_have_printed_shapes() {
        for id in TABLE_IDS {
            let table = GoldenTable::embedded(id).unwrap();
            assert_eq!(table.rows.len(), printed_rows(id));
            assert!(table.rows.iter().all(|r| r.cells.len() == 10));
        }
        assert!(GoldenTable::embedded(7).is_err());
    }

    #[test]
    fn printed_c3_repeats_c1() {
        for id in TABLE_IDS {
            let table = GoldenTable::embedded(id).unwrap();
            assert_eq!(table.column(TableColumn::C3F), table.column(TableColumn::C1F));
            assert_eq!(table.column(TableColumn::C3FInv), table.column(TableColumn::C1FInv));
        }
    }

    #[test]
    fn table_ids_map_to_functions() {
        assert_eq!(table_function(5).unwrap(), FunctionName::QStarSeq);
        assert_eq!(table_id_for(FunctionName::PartitionSeq), Some(6));
        assert_eq!(table_id_for(FunctionName::Mobius), None);
        assert!(table_function(0).is_err());
    }

    #[test]
    fn malformed_fixtures_are_rejected() {
        assert!(matches!(GoldenTable::from_csv(1, "n,f\n1,1\n"), Err(Error::Fixture(_))));
        let bad = format!("{TABLE_HEADER}\n1,1,1,1,1,1,1,1,1,1,x\n");
        assert!(matches!(GoldenTable::from_csv(1, &bad), Err(Error::Fixture(_))));
        let gap = format!("{TABLE_HEADER}\n2,1,1,1,1,1,1,1,1,1,1\n");
        assert!(matches!(GoldenTable::from_csv(1, &gap), Err(Error::Fixture(_))));
    }
}
