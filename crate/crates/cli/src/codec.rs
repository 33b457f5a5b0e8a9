//! JSON forms of diagrams and constructible modules. Rationals are written as
//! `p/q` strings and every map is ordered, so emitting is deterministic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use persdgm::category::{AbGroup, CategoryId, Mor, Obj, Payload};
use persdgm::diagram::{DiagramGrid, Role};
use persdgm::exact::{format_rational, parse_rational, Field, Matrix, Rational};
use persdgm::grothendieck::{BasisKey, GroupElem, GroupTag};
use persdgm::module::ConstructibleModule;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

fn rational(s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| invalid(format!("bad rational `{s}`")))
}

fn rationals(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| rational(s)).collect()
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

/// `Q` or `Fp:<p>`.
pub fn parse_field(s: &str) -> Result<Field> {
    if s == "Q" {
        return Ok(Field::Rationals);
    }
    let p = s
        .strip_prefix("Fp:")
        .and_then(|p| p.parse().ok())
        .ok_or_else(|| invalid(format!("unknown field `{s}`")))?;
    Ok(Field::prime(p)?)
}

pub fn category_from_parts(name: &str, field: Option<&str>) -> Result<CategoryId> {
    let field = || -> Result<Field> {
        field
            .map(parse_field)
            .unwrap_or_else(|| Err(invalid(format!("category {name} needs a field"))))
    };
    Ok(match name {
        "finset" => CategoryId::FinSet,
        "vect" => CategoryId::Vect(field()?),
        "ab" => CategoryId::Ab,
        "finab" => CategoryId::FinAb,
        "repn" => CategoryId::RepN(field()?),
        other => return Err(invalid(format!("unknown category `{other}`"))),
    })
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

impl GroupJson {
    fn from_tag(tag: &GroupTag) -> Self {
        let (kind, category) = match tag {
            GroupTag::A(c) => ("A", Some(c)),
            GroupTag::B(c) => ("B", Some(c)),
            GroupTag::Free => ("free", None),
        };
        GroupJson {
            kind: kind.into(),
            category: category.map(|c| c.name().into()),
            field: category.and_then(|c| c.field()).map(Field::tag),
        }
    }

    fn to_tag(&self) -> Result<GroupTag> {
        let category = || -> Result<CategoryId> {
            let name = self
                .category
                .as_deref()
                .ok_or_else(|| invalid("group needs a category"))?;
            category_from_parts(name, self.field.as_deref())
        };
        match self.kind.as_str() {
            "A" => Ok(GroupTag::A(category()?)),
            "B" => Ok(GroupTag::B(category()?)),
            "free" => Ok(GroupTag::Free),
            other => Err(invalid(format!("unknown group type `{other}`"))),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub enum Infinity {
    #[serde(rename = "inf")]
    Inf,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum End {
    Index(usize),
    Inf(Infinity),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellJson {
    /// Index of the start in `grid`.
    pub i: usize,
    /// Index of the end in `grid`, or `"inf"`.
    pub j_or_inf: End,
    pub label: BTreeMap<String, i64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    pub grid: Vec<String>,
    pub cells: Vec<CellJson>,
    pub group: GroupJson,
}

impl DiagramJson {
    pub fn from_diagram(y: &DiagramGrid) -> Self {
        let n = y.len();
        let cells = y
            .cells()
            .map(|(&(i, j), v)| CellJson {
                i: i - 1,
                j_or_inf: if j == n + 1 {
                    End::Inf(Infinity::Inf)
                } else {
                    End::Index(j - 1)
                },
                label: v.iter().map(|(k, c)| (k.to_string(), *c)).collect(),
            })
            .collect();
        DiagramJson {
            grid: strings(y.grid()),
            cells,
            group: GroupJson::from_tag(y.tag()),
        }
    }

    pub fn to_diagram(&self) -> Result<DiagramGrid> {
        let grid = rationals(&self.grid)?;
        let n = grid.len();
        let mut y = DiagramGrid::new(grid, self.group.to_tag()?, Role::Finite)?;
        for cell in &self.cells {
            let j = match cell.j_or_inf {
                End::Index(j) => j + 1,
                End::Inf(_) => n + 1,
            };
            if cell.i >= n || j <= cell.i + 1 || j > n + 1 {
                return Err(invalid(format!(
                    "cell ({}, {:?}) outside the grid",
                    cell.i, cell.j_or_inf
                )));
            }
            let mut v = GroupElem::zero();
            for (key, c) in &cell.label {
                v.add_to(key.parse::<BasisKey>()?, *c);
            }
            y.set(cell.i + 1, j, y.get(cell.i + 1, j).add(&v))?;
        }
        Ok(y)
    }
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free: Option<usize>,
    /// Invariant factors `d_1 | d_2 | …`, each at least 2.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<usize>>,
    /// `target × source`, one row per target generator.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub category: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub critical: Vec<String>,
    /// One object per critical value; the module is `e` before the first.
    pub objects: Vec<ObjectJson>,
    /// `maps[k]` goes from `objects[k]` to `objects[k + 1]`.
    pub maps: Vec<MapJson>,
}

fn matrix_strings<T>(m: &Matrix<T>, show: impl Fn(&T) -> String) -> Vec<Vec<String>>
where
    T: Clone,
{
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| show(m.get(i, j))).collect())
        .collect()
}

fn object_json(o: &Obj) -> ObjectJson {
    match o {
        Obj::FinSet(n) => ObjectJson {
            size: Some(*n),
            ..Default::default()
        },
        Obj::Vect { dim, .. } => ObjectJson {
            dim: Some(*dim),
            ..Default::default()
        },
        Obj::Ab(g) | Obj::FinAb(g) => ObjectJson {
            free: Some(g.free_rank()),
            torsion: Some(g.torsion().iter().map(|d| d.to_string()).collect()),
            ..Default::default()
        },
        Obj::RepN { matrix, .. } => ObjectJson {
            matrix: Some(matrix_strings(matrix, format_rational)),
            ..Default::default()
        },
    }
}

fn map_json(m: &Mor) -> MapJson {
    match m.payload() {
        Payload::Table(t) => MapJson {
            table: Some(t.clone()),
            ..Default::default()
        },
        Payload::Linear(a) => MapJson {
            matrix: Some(matrix_strings(a, format_rational)),
            ..Default::default()
        },
        Payload::Integer(a) => MapJson {
            matrix: Some(matrix_strings(a, |x| x.to_string())),
            ..Default::default()
        },
    }
}

fn square_size(rows: &[Vec<String>]) -> Result<usize> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(invalid("representation matrix must be square"));
    }
    Ok(n)
}

fn object_from_json(category: &CategoryId, o: &ObjectJson) -> Result<Obj> {
    let need = |what: &str| invalid(format!("{} objects need `{what}`", category.name()));
    match category {
        CategoryId::FinSet => Ok(Obj::finset(o.size.ok_or_else(|| need("size"))?)),
        CategoryId::Vect(f) => Ok(Obj::vect(f, o.dim.ok_or_else(|| need("dim"))?)),
        CategoryId::Ab | CategoryId::FinAb => {
            let torsion = o
                .torsion
                .as_deref()
                .unwrap_or_default()
                .iter()
                .map(|d| {
                    d.parse::<BigInt>()
                        .map_err(|_| invalid(format!("bad invariant factor `{d}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            let g = AbGroup::from_invariants(o.free.unwrap_or(0), torsion)?;
            Ok(if *category == CategoryId::Ab {
                Obj::ab(g)
            } else {
                Obj::finab(g)?
            })
        }
        CategoryId::RepN(f) => {
            let rows = o.matrix.as_ref().ok_or_else(|| need("matrix"))?;
            let n = square_size(rows)?;
            let entries = rows
                .iter()
                .map(|r| rationals(r))
                .collect::<Result<Vec<_>>>()?;
            let m = Matrix::from_fn(n, n, |i, j| entries[i][j].clone());
            Ok(Obj::repn(f, m)?)
        }
    }
}

fn map_from_json(source: &Obj, target: &Obj, m: &MapJson) -> Result<Mor> {
    if let Some(t) = &m.table {
        return Ok(Mor::new(
            source.clone(),
            target.clone(),
            Payload::Table(t.clone()),
        )?);
    }
    let rows = m
        .matrix
        .as_ref()
        .ok_or_else(|| invalid("maps need `table` or `matrix`"))?;
    let (r, c) = (target.generator_count(), source.generator_count());
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(invalid(format!("map matrix must be {r}x{c}")));
    }
    let entries = rows
        .iter()
        .map(|row| rationals(row))
        .collect::<Result<Vec<_>>>()?;
    let payload = match source {
        Obj::Ab(_) | Obj::FinAb(_) => {
            if entries.iter().flatten().any(|x| !x.is_integer()) {
                return Err(invalid("group homomorphisms need integer entries"));
            }
            Payload::Integer(Matrix::from_fn(r, c, |i, j| entries[i][j].to_integer()))
        }
        _ => Payload::Linear(Matrix::from_fn(r, c, |i, j| entries[i][j].clone())),
    };
    Ok(Mor::new(source.clone(), target.clone(), payload)?)
}

impl ModuleJson {
    pub fn from_module(m: &ConstructibleModule) -> Self {
        let category = m.category();
        ModuleJson {
            category: category.name().into(),
            field: category.field().map(Field::tag),
            critical: strings(m.critical()),
            objects: m.objects()[1..].iter().map(object_json).collect(),
            maps: m.maps().iter().skip(1).map(map_json).collect(),
        }
    }

    pub fn to_module(&self) -> Result<ConstructibleModule> {
        let category = category_from_parts(&self.category, self.field.as_deref())?;
        let n = self.critical.len();
        if self.objects.len() != n || self.maps.len() + 1 != n.max(1) {
            return Err(invalid(format!(
                "{n} critical values need {n} objects and {} maps",
                n.saturating_sub(1)
            )));
        }
        let mut objects = vec![Obj::identity_object(&category)];
        for o in &self.objects {
            objects.push(object_from_json(&category, o)?);
        }
        let mut maps = Vec::with_capacity(n);
        if n > 0 {
            maps.push(Mor::from_identity(&objects[1]));
        }
        for (k, m) in self.maps.iter().enumerate() {
            maps.push(map_from_json(&objects[k + 1], &objects[k + 2], m)?);
        }
        Ok(ConstructibleModule::new(
            category,
            rationals(&self.critical)?,
            objects,
            maps,
        )?)
    }
}

/// Pretty JSON followed by a newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
