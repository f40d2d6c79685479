//! Attribute schemas and schema'd feature vectors.
//!
//! A vector is only meaningful against its schema: an ordered list of named,
//! range-bounded scalar dimensions. Dimensionality varies per schema, and two
//! vectors on different schemas are compared over the dimensions they share
//! by name.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;
use thiserror::Error;

/// Index of a registered schema.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SchemaId(pub u32);

impl fmt::Display for SchemaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VectorError {
    #[error("schema has no dimensions")]
    EmptySchema,
    #[error("schema `{0}` is already registered")]
    DuplicateSchema(String),
    #[error("invalid schema name `{0}`")]
    InvalidSchemaName(String),
    #[error("invalid dimension name `{0}`")]
    InvalidDimName(String),
    #[error("duplicate dimension `{0}`")]
    DuplicateDim(String),
    #[error("dimension `{name}` has empty range [{min}, {max}]")]
    InvalidRange { name: String, min: f64, max: f64 },
    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("value for `{0}` is not finite")]
    NonFinite(String),
    #[error("dimension `{0}` has different ranges in the two schemas")]
    RangeMismatch(String),
    #[error("schemas `{0}` and `{1}` differ")]
    SchemaMismatch(String, String),
    #[error("dimension `{0}` is missing from the source schema")]
    MissingDim(String),
    #[error("sample count must be at least 1")]
    ZeroCount,
}

/// One named scalar dimension with its admissible range.
#[derive(Debug, Clone, PartialEq)]
pub struct Dim {
    pub name: String,
    pub min: f64,
    pub max: f64,
}

impl Dim {
    pub fn new(name: impl Into<String>, min: f64, max: f64) -> Self {
        Dim { name: name.into(), min, max }
    }

    #[inline]
    pub fn span(&self) -> f64 {
        self.max - self.min
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttributeSchema {
    id: SchemaId,
    name: String,
    dims: Vec<Dim>,
}

impl AttributeSchema {
    pub fn id(&self) -> SchemaId {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dims(&self) -> &[Dim] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim_index(&self, name: &str) -> Option<usize> {
        self.dims.iter().position(|d| d.name == name)
    }

    /// True when `other` has the same dimensions, in the same order, with the same ranges.
    pub fn same_layout(&self, other: &AttributeSchema) -> bool {
        self.dims == other.dims
    }

    /// True when the two schemas have at least one dimension name in common.
    pub fn shares_dim_with(&self, other: &AttributeSchema) -> bool {
        self.dims.iter().any(|d| other.dim_index(&d.name).is_some())
    }
}

/// Checks name, dimension uniqueness and ranges without registering anything.
pub fn validate_dims(name: &str, dims: &[Dim]) -> Result<(), VectorError> {
    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c.is_control()) {
        return Err(VectorError::InvalidSchemaName(name.into()));
    }
    if dims.is_empty() {
        return Err(VectorError::EmptySchema);
    }
    for (i, d) in dims.iter().enumerate() {
        if d.name.is_empty() || d.name.chars().any(|c| c.is_whitespace() || c.is_control() || c == ':') {
            return Err(VectorError::InvalidDimName(d.name.clone()));
        }
        if dims[..i].iter().any(|e| e.name == d.name) {
            return Err(VectorError::DuplicateDim(d.name.clone()));
        }
        if !(d.min.is_finite() && d.max.is_finite() && d.min < d.max) {
            return Err(VectorError::InvalidRange { name: d.name.clone(), min: d.min, max: d.max });
        }
    }
    Ok(())
}

/// Registered schemas. Schemas are immutable once registered and shared by `Arc`.
#[derive(Debug, Clone, Default)]
pub struct SchemaRegistry {
    schemas: Vec<Arc<AttributeSchema>>,
    by_name: HashMap<String, SchemaId>,
}

impl SchemaRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn define(&mut self, name: &str, dims: Vec<Dim>) -> Result<Arc<AttributeSchema>, VectorError> {
        validate_dims(name, &dims)?;
        if self.by_name.contains_key(name) {
            return Err(VectorError::DuplicateSchema(name.into()));
        }
        let id = SchemaId(self.schemas.len() as u32);
        let schema = Arc::new(AttributeSchema { id, name: name.into(), dims });
        self.by_name.insert(name.into(), id);
        self.schemas.push(schema.clone());
        Ok(schema)
    }

    /// Returns a registered schema with exactly `dims`, defining one named
    /// `name_hint` (suffixed if taken) when none exists.
    pub fn intern(&mut self, name_hint: &str, dims: Vec<Dim>) -> Result<Arc<AttributeSchema>, VectorError> {
        if let Some(s) = self.schemas.iter().find(|s| s.dims == dims) {
            return Ok(s.clone());
        }
        let mut name = String::from(name_hint);
        let mut n = 1;
        while self.by_name.contains_key(name.as_str()) {
            n += 1;
            name = alloc::format!("{name_hint}~{n}");
        }
        self.define(&name, dims)
    }

    pub fn get(&self, id: SchemaId) -> Option<&Arc<AttributeSchema>> {
        self.schemas.get(id.0 as usize)
    }

    pub fn by_name(&self, name: &str) -> Option<&Arc<AttributeSchema>> {
        self.by_name.get(name).and_then(|id| self.get(*id))
    }

    /// True when `schema` is the registered schema with its id.
    pub fn contains(&self, schema: &AttributeSchema) -> bool {
        self.get(schema.id).is_some_and(|s| s.name == schema.name && s.dims == schema.dims)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<AttributeSchema>> {
        self.schemas.iter()
    }

    pub fn len(&self) -> usize {
        self.schemas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.schemas.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    schema: Arc<AttributeSchema>,
    values: Vec<f64>,
}

impl FeatureVector {
    /// Builds a vector, clamping out-of-range values. Returns the indices of
    /// the clamped dimensions alongside the vector.
    pub fn with_clamp_report(schema: Arc<AttributeSchema>, mut values: Vec<f64>) -> Result<(Self, Vec<usize>), VectorError> {
        if values.len() != schema.len() {
            return Err(VectorError::WrongLength { expected: schema.len(), got: values.len() });
        }
        let mut clamped = Vec::new();
        for (i, (v, d)) in values.iter_mut().zip(schema.dims()).enumerate() {
            if !v.is_finite() {
                return Err(VectorError::NonFinite(d.name.clone()));
            }
            if *v < d.min || *v > d.max {
                *v = v.clamp(d.min, d.max);
                clamped.push(i);
            }
        }
        Ok((FeatureVector { schema, values }, clamped))
    }

    pub fn new(schema: Arc<AttributeSchema>, values: Vec<f64>) -> Result<Self, VectorError> {
        Self::with_clamp_report(schema, values).map(|(v, _)| v)
    }

    pub fn schema(&self) -> &Arc<AttributeSchema> {
        &self.schema
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, dim: &str) -> Option<f64> {
        self.schema.dim_index(dim).map(|i| self.values[i])
    }
}

/// Similarity over raw dimension lists; see [`similarity`].
///
/// Shared dimensions are matched by name and iterated in `a`'s order. The
/// range used for normalisation is `a`'s, and must equal `b`'s.
pub fn similarity_parts(a_dims: &[Dim], a: &[f64], b_dims: &[Dim], b: &[f64]) -> Result<f64, VectorError> {
    let mut shared = 0usize;
    let mut gap = 0.0;
    for (i, d) in a_dims.iter().enumerate() {
        let Some(j) = b_dims.iter().position(|e| e.name == d.name) else {
            continue;
        };
        let e = &b_dims[j];
        if d.min != e.min || d.max != e.max {
            return Err(VectorError::RangeMismatch(d.name.clone()));
        }
        shared += 1;
        gap += (a[i] - b[j]).abs() / d.span();
    }
    if shared == 0 {
        return Ok(0.0);
    }
    let overlap = shared as f64 / a_dims.len().max(b_dims.len()) as f64;
    let closeness = 1.0 - gap / shared as f64;
    Ok((overlap * closeness).clamp(0.0, 1.0))
}

/// Range-normalised L1 similarity in `[0, 1]`, scaled down by how much of the
/// larger schema the two vectors actually share.
pub fn similarity(a: &FeatureVector, b: &FeatureVector) -> Result<f64, VectorError> {
    similarity_parts(a.schema.dims(), &a.values, b.schema.dims(), &b.values)
}

/// One step of a running mean: `p + (s - p) / n`.
#[inline]
pub fn running_mean_step(p: f64, s: f64, n: usize) -> f64 {
    p + (s - p) / n as f64
}

/// Folds `sample` into a prototype that already summarises `n - 1` samples.
pub fn prototype_update(proto: &FeatureVector, sample: &FeatureVector, n: usize) -> Result<FeatureVector, VectorError> {
    if n == 0 {
        return Err(VectorError::ZeroCount);
    }
    if !proto.schema.same_layout(&sample.schema) {
        return Err(VectorError::SchemaMismatch(proto.schema.name.clone(), sample.schema.name.clone()));
    }
    let values = proto.values.iter().zip(&sample.values).map(|(&p, &s)| running_mean_step(p, s, n)).collect();
    Ok(FeatureVector { schema: proto.schema.clone(), values })
}

/// Copies `v`'s values into `target`'s dimension order.
pub fn project(v: &FeatureVector, target: &Arc<AttributeSchema>) -> Result<FeatureVector, VectorError> {
    let mut values = Vec::with_capacity(target.len());
    for d in target.dims() {
        let i = v.schema.dim_index(&d.name).ok_or_else(|| VectorError::MissingDim(d.name.clone()))?;
        let src = &v.schema.dims()[i];
        if src.min != d.min || src.max != d.max {
            return Err(VectorError::RangeMismatch(d.name.clone()));
        }
        values.push(v.values[i]);
    }
    Ok(FeatureVector { schema: target.clone(), values })
}

/// Dimensions of `first` that every schema in `rest` also has, in `first`'s order.
pub fn intersect_dims<'a>(first: &[Dim], rest: impl IntoIterator<Item = &'a [Dim]> + Clone) -> Result<Vec<Dim>, VectorError> {
    let mut out = Vec::new();
    'dims: for d in first {
        for other in rest.clone() {
            match other.iter().find(|e| e.name == d.name) {
                None => continue 'dims,
                Some(e) if e.min != d.min || e.max != d.max => return Err(VectorError::RangeMismatch(d.name.clone())),
                Some(_) => {}
            }
        }
        out.push(d.clone());
    }
    Ok(out)
}
