//! Instance files: parsing, validation and the normalized form echoed by
//! `validate`.

use std::collections::BTreeMap;

use gstable_core::budget::Budgets;
use gstable_core::cohomology::ActionModule;
use gstable_core::field::Field;
use gstable_core::group::{named, GroupTable, Subgroup};
use gstable_core::matrix::FqMatrix;
use gstable_core::rep::Representation;
use gstable_core::series::SeriesKind;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub group: GroupSection,
    pub subgroup: SubgroupSection,
    pub field: FieldSection,
    pub representation: RepSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSection>,
    #[serde(default)]
    pub options: OptionsSection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    /// `cyclic:n`, `dihedral:n`, `sym:n`, `alt:n`, `quaternion`, `abelian:n1,n2,..`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub named: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    pub p: u64,
    #[serde(default = "one")]
    pub e: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Image {
    pub element: usize,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    /// Images of generators of `L`, or of every element.
    pub images: Vec<Image>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSection {
    pub factors: Vec<i64>,
    /// Integer matrices of generators of `G`; empty means trivial.
    #[serde(default)]
    pub action: Vec<Image>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget_h: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget_cochains: Option<u64>,
}

/// A parsed and validated instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub g: GroupTable,
    pub l: Subgroup,
    pub field: Field,
    pub theta: Representation,
    pub module: Option<ActionModule>,
    pub series: SeriesKind,
    pub budgets: Budgets,
    pub normalized: InstanceFile,
}

fn input<E: std::fmt::Display>(context: &str) -> impl Fn(E) -> CliError + '_ {
    move |e| CliError::Input(format!("{context}: {e}"))
}

fn build_group(s: &GroupSection) -> Result<GroupTable, CliError> {
    let g = match (&s.named, &s.table) {
        (Some(n), None) => named::parse(n).ok_or_else(|| CliError::Input(format!("group: unknown named group `{n}`")))?,
        (None, Some(t)) => GroupTable::from_table(t).map_err(input("group"))?,
        _ => return Err(CliError::Input("group: give exactly one of `named` or `table`".into())),
    };
    if let Some(n) = s.order {
        if n != g.order() {
            return Err(CliError::Input(format!("group: declared order {n} but the group has order {}", g.order())));
        }
    }
    Ok(g)
}

fn build_matrix(field: &Field, rows: &[Vec<i64>], what: &str) -> Result<FqMatrix, CliError> {
    let q = field.order() as i64;
    let prime = field.degree() == 1;
    let codes: Result<Vec<Vec<u64>>, CliError> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| match (prime, (0..q).contains(&x)) {
                    (true, _) => Ok(x.rem_euclid(q) as u64),
                    (false, true) => Ok(x as u64),
                    (false, false) => Err(CliError::Input(format!("{what}: entry {x} is not a field element code below {q}"))),
                })
                .collect()
        })
        .collect();
    FqMatrix::from_codes(field, &codes?).map_err(input(what))
}

/// Extends integer action matrices from generators to all of `G`.
fn build_module(g: &GroupTable, m: &ModuleSection) -> Result<ActionModule, CliError> {
    if m.factors.iter().any(|&d| d < 2) {
        return Err(CliError::Input("module: factors must be at least 2".into()));
    }
    if m.action.is_empty() {
        return Ok(ActionModule::trivial(g, &m.factors));
    }
    let k = m.factors.len();
    let reduce = |a: &[Vec<i64>]| -> Vec<Vec<i64>> {
        a.iter().enumerate().map(|(j, row)| row.iter().map(|x| x.rem_euclid(m.factors[j])).collect()).collect()
    };
    let compose = |a: &[Vec<i64>], b: &[Vec<i64>]| -> Vec<Vec<i64>> {
        reduce(&(0..k).map(|j| (0..k).map(|i| (0..k).map(|t| a[j][t] * b[t][i]).sum()).collect()).collect::<Vec<_>>())
    };
    let mut table: Vec<Option<Vec<Vec<i64>>>> = vec![None; g.order()];
    table[g.identity()] = Some((0..k).map(|j| (0..k).map(|i| i64::from(i == j)).collect()).collect());
    let mut gens = Vec::new();
    for img in &m.action {
        if img.element >= g.order() || img.matrix.len() != k || img.matrix.iter().any(|r| r.len() != k) {
            return Err(CliError::Input(format!("module: bad action entry for element {}", img.element)));
        }
        gens.push((img.element, reduce(&img.matrix)));
    }
    let mut frontier = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for (s, ms) in &gens {
            let y = g.mul(x, *s);
            let my = compose(table[x].as_ref().unwrap(), ms);
            match &table[y] {
                Some(existing) if *existing != my => {
                    return Err(CliError::Input(format!("module: action matrices are inconsistent at element {y}")));
                }
                Some(_) => {}
                None => {
                    table[y] = Some(my);
                    frontier.push(y);
                }
            }
        }
    }
    let action: Option<Vec<Vec<Vec<i64>>>> = table.into_iter().collect();
    let action = action.ok_or_else(|| CliError::Input("module: action elements do not generate the group".into()))?;
    ActionModule::new(g, &m.factors, action).map_err(input("module"))
}

fn parse_series(s: &str) -> Result<SeriesKind, CliError> {
    s.parse().map_err(CliError::Input)
}

impl Instance {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: InstanceFile = toml::from_str(text).map_err(input("instance"))?;
        Self::from_file(file)
    }

    pub fn from_file(file: InstanceFile) -> Result<Self, CliError> {
        let g = build_group(&file.group)?;
        let l = match (&file.subgroup.elements, &file.subgroup.generators) {
            (Some(e), None) => Subgroup::new(&g, e).map_err(input("subgroup"))?,
            (None, Some(gens)) => g.generate(gens).map_err(input("subgroup"))?,
            _ => return Err(CliError::Input("subgroup: give exactly one of `elements` or `generators`".into())),
        };
        let f = &file.field;
        let field = Field::new(f.p, f.e, f.modulus.clone()).map_err(input("field"))?;

        let r = &file.representation;
        let dim = r.dim.or_else(|| r.images.first().map(|i| i.matrix.len())).unwrap_or(0);
        if dim == 0 {
            return Err(CliError::Input("representation: dimension must be positive".into()));
        }
        let mut given: BTreeMap<usize, FqMatrix> = BTreeMap::new();
        for img in &r.images {
            let m = build_matrix(&field, &img.matrix, &format!("representation image of {}", img.element))?;
            if m.rows() != dim || m.cols() != dim {
                return Err(CliError::Input(format!("representation: image of {} is not {dim}x{dim}", img.element)));
            }
            if given.insert(img.element, m).is_some() {
                return Err(CliError::Input(format!("representation: element {} given twice", img.element)));
            }
        }
        let theta = if given.len() == l.len() && l.elements().iter().all(|x| given.contains_key(x)) {
            let images = l.elements().iter().map(|x| given[x].clone()).collect();
            Representation::new(&g, &l, &field, dim, images)
        } else {
            let pairs: Vec<(usize, FqMatrix)> = given.into_iter().collect();
            Representation::from_generators(&g, &l, &field, dim, &pairs)
        }
        .map_err(input("representation"))?;

        let module = file.module.as_ref().map(|m| build_module(&g, m)).transpose()?;
        let o = &file.options;
        let series = o.series.as_deref().map(parse_series).transpose()?.unwrap_or_default();
        let mut budgets = Budgets::default();
        if let Some(b) = o.budget_h {
            budgets.units = b;
        }
        if let Some(b) = o.budget_cochains {
            budgets.cochains = b;
        }

        let normalized = InstanceFile {
            group: match &file.group.named {
                Some(n) => GroupSection { named: Some(n.trim().to_string()), order: Some(g.order()), table: None },
                None => GroupSection { named: None, order: Some(g.order()), table: Some(g.table()) },
            },
            subgroup: SubgroupSection { elements: Some(l.elements().to_vec()), generators: None },
            field: FieldSection { p: f.p, e: f.e, modulus: Some(field.spec().modulus.clone()) },
            representation: RepSection {
                dim: Some(dim),
                images: l.elements().iter().map(|&x| Image { element: x, matrix: matrix_rows(theta.image(x)) }).collect(),
            },
            module: module.as_ref().map(|m| ModuleSection {
                factors: m.factors().to_vec(),
                action: g.elements().map(|x| Image { element: x, matrix: m.matrix(x) }).collect(),
            }),
            options: OptionsSection {
                series: Some(series_name(series).into()),
                budget_h: Some(budgets.units),
                budget_cochains: Some(budgets.cochains),
            },
        };
        Ok(Instance { g, l, field, theta, module, series, budgets, normalized })
    }
}

pub fn series_name(s: SeriesKind) -> &'static str {
    match s {
        SeriesKind::Auto => "auto",
        SeriesKind::Radical => "radical",
        SeriesKind::Derived => "derived",
    }
}

pub fn matrix_rows(m: &FqMatrix) -> Vec<Vec<i64>> {
    m.to_codes().into_iter().map(|r| r.into_iter().map(|c| c as i64).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const KLEIN: &str = r#"
[group]
named = "abelian:2,2"

[subgroup]
generators = [2]

[field]
p = 3

[representation]
images = [{ element = 2, matrix = [[-1]] }]
"#;

    #[test]
    fn parses_and_normalizes() {
        let inst = Instance::parse(KLEIN).unwrap();
        assert_eq!(inst.l.elements(), &[0, 2]);
        let n = &inst.normalized;
        assert_eq!(n.representation.images.len(), 2);
        assert_eq!(n.representation.images[1].matrix, vec![vec![2]]);
        let again = Instance::parse(&toml::to_string(n).unwrap()).unwrap();
        assert_eq!(again.normalized, *n);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Instance::parse("[group]\nnamed = \"cyclic:4\""), Err(CliError::Input(_))));
        let bad = KLEIN.replace("[[-1]]", "[[0]]");
        assert!(matches!(Instance::parse(&bad), Err(CliError::Input(_))));
        let table = KLEIN.replace("named = \"abelian:2,2\"", "table = [[0,1],[1,1]]");
        assert!(matches!(Instance::parse(&table), Err(CliError::Input(_))));
    }

    #[test]
    fn module_from_generators() {
        let text = format!("{KLEIN}\n[module]\nfactors = [3]\naction = [{{ element = 1, matrix = [[2]] }}, {{ element = 2, matrix = [[1]] }}]\n");
        let inst = Instance::parse(&text).unwrap();
        let m = inst.module.unwrap();
        assert_eq!(m.matrix(3), vec![vec![2]]);
        assert_eq!(m.matrix(2), vec![vec![1]]);
    }
}
