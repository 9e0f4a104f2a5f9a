use serde::Serialize;

use crate::mem::MemTable;

/// How a MEM's genome range relates to the read's true source genome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RangeClass {
    /// Exactly `[g, g]`.
    TruePositive,
    /// Non-empty and excludes `g`.
    FalsePositive,
    /// Includes `g` and at least one other genome.
    VaguePositive,
    /// Empty.
    FalseNegative,
}

pub fn classify_range(range: Option<(usize, usize)>, g: usize) -> RangeClass {
    match range {
        None => RangeClass::FalseNegative,
        Some((first, last)) if first == g && last == g => RangeClass::TruePositive,
        Some((first, last)) if first <= g && g <= last => RangeClass::VaguePositive,
        Some(_) => RangeClass::FalsePositive,
    }
}

/// A read is a true positive when all of its longest MEMs are.
pub fn classify_read(table: &MemTable, g: usize) -> bool {
    match table.longest_mems() {
        Ok(longest) => longest
            .iter()
            .all(|r| classify_range(r.genome_range(), g) == RangeClass::TruePositive),
        Err(_) => false,
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub true_positive: u64,
    pub false_positive: u64,
    pub vague_positive: u64,
    pub false_negative: u64,
}

impl ClassCounts {
    pub fn add(&mut self, class: RangeClass) {
        match class {
            RangeClass::TruePositive => self.true_positive += 1,
            RangeClass::FalsePositive => self.false_positive += 1,
            RangeClass::VaguePositive => self.vague_positive += 1,
            RangeClass::FalseNegative => self.false_negative += 1,
        }
    }

    pub fn of_table(table: &MemTable, g: usize) -> Self {
        let mut c = Self::default();
        for r in table.records() {
            c.add(classify_range(r.genome_range(), g));
        }
        c
    }

    pub fn merge(self, o: Self) -> Self {
        Self {
            true_positive: self.true_positive + o.true_positive,
            false_positive: self.false_positive + o.false_positive,
            vague_positive: self.vague_positive + o.vague_positive,
            false_negative: self.false_negative + o.false_negative,
        }
    }

    pub fn total(&self) -> u64 {
        self.true_positive + self.false_positive + self.vague_positive + self.false_negative
    }
}
