use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::{
    classify_adjusted, classify_initial, is_boundary, AlgorithmRecord, ApplicationArea, Era, EstimateType,
    ScalingForm,
};
use crate::protocol::VolumetricClass;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TabulationMode {
    Initial,
    Adjusted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTableRow {
    pub class: VolumetricClass,
    pub form: Option<ScalingForm>,
    pub label: String,
    pub count: usize,
    pub percent: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTable {
    pub mode: TabulationMode,
    pub total: usize,
    /// Ordered by class, then by growth of the scaling form.
    pub rows: Vec<ClassTableRow>,
}

/// `count / total` as a percentage rounded to the nearest integer, halves up.
pub fn rounded_percent(count: usize, total: usize) -> usize {
    if total == 0 {
        0
    } else {
        (200 * count + total) / (2 * total)
    }
}

impl ClassTable {
    pub fn class_total(&self, class: VolumetricClass) -> usize {
        self.rows.iter().filter(|r| r.class == class).map(|r| r.count).sum()
    }

    pub fn class_percent(&self, class: VolumetricClass) -> usize {
        rounded_percent(self.class_total(class), self.total)
    }

    pub fn count(&self, class: VolumetricClass, form: ScalingForm) -> usize {
        self.rows
            .iter()
            .filter(|r| r.class == class && r.form == Some(form))
            .map(|r| r.count)
            .sum()
    }
}

pub fn tabulate(records: &[AlgorithmRecord], mode: TabulationMode) -> Result<ClassTable> {
    if records.is_empty() {
        return Err(Error::Domain("cannot tabulate an empty record list".into()));
    }
    // sort key: (class, form order or past-the-end, label)
    let mut cells: BTreeMap<(VolumetricClass, usize, String), (Option<ScalingForm>, usize)> = BTreeMap::new();
    for record in records {
        let class = match mode {
            TabulationMode::Initial => classify_initial(&record.scaling)?,
            TabulationMode::Adjusted => classify_adjusted(&record.scaling, record.estimate_type)?,
        };
        let form = record.scaling.form();
        let order = form.map_or(usize::MAX, |f| f as usize);
        let cell = cells
            .entry((class, order, record.scaling.label()))
            .or_insert((form, 0));
        cell.1 += 1;
    }
    let total = records.len();
    let rows = cells
        .into_iter()
        .map(|((class, _, label), (form, count))| ClassTableRow {
            class,
            form,
            label,
            count,
            percent: rounded_percent(count, total),
        })
        .collect();
    Ok(ClassTable { mode, total, rows })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdjustmentRow {
    pub form: ScalingForm,
    pub adjusted: usize,
    pub kept: usize,
}

/// For each boundary form (`n`, `n²`, `n³`): how many records moved up a
/// class and how many kept their initial class.
pub fn tabulate_adjustments(records: &[AlgorithmRecord]) -> Result<Vec<AdjustmentRow>> {
    if records.is_empty() {
        return Err(Error::Domain("cannot tabulate an empty record list".into()));
    }
    let mut rows: Vec<AdjustmentRow> = [ScalingForm::Linear, ScalingForm::Quadratic, ScalingForm::Cubic]
        .into_iter()
        .map(|form| AdjustmentRow { form, adjusted: 0, kept: 0 })
        .collect();
    for record in records.iter().filter(|r| is_boundary(&r.scaling)) {
        let moved = classify_adjusted(&record.scaling, record.estimate_type)? != classify_initial(&record.scaling)?;
        let form = record.scaling.form();
        if let Some(row) = rows.iter_mut().find(|row| Some(row.form) == form) {
            if moved {
                row.adjusted += 1;
            } else {
                row.kept += 1;
            }
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marginals {
    pub total: usize,
    pub estimate_types: Vec<(EstimateType, usize)>,
    pub eras: Vec<(Era, usize)>,
    /// Overlapping: a record may count toward several areas.
    pub application_areas: Vec<(ApplicationArea, usize)>,
}

pub fn marginals(records: &[AlgorithmRecord]) -> Marginals {
    Marginals {
        total: records.len(),
        estimate_types: EstimateType::ALL
            .iter()
            .map(|&e| (e, records.iter().filter(|r| r.estimate_type == e).count()))
            .collect(),
        eras: Era::ALL
            .iter()
            .map(|&e| (e, records.iter().filter(|r| r.era == e).count()))
            .collect(),
        application_areas: ApplicationArea::ALL
            .iter()
            .map(|&a| (a, records.iter().filter(|r| r.application_areas.contains(&a)).count()))
            .collect(),
    }
}
