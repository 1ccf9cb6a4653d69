//! Serde DTOs for every file format and report the CLI reads or writes.
//! Struct field order fixes the JSON key order, so identical inputs always
//! serialize to identical bytes.

use serde::{Deserialize, Serialize};

use anagram_core::anaconstruct::ConstructionReport;
use anagram_core::gridmodel::{
    BlockColouring, BlockString, BlockSymbol, GridColouring, GridVertex,
};
use anagram_core::pathcheck::ColouringVerdict;
use anagram_core::treebound::{Thresholds, UnbalancedCertificate};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridColouringDto {
    pub n: usize,
    pub c: u32,
    pub top: Vec<u32>,
    pub bottom: Vec<u32>,
}

impl GridColouringDto {
    pub fn from_core(phi: &GridColouring) -> Self {
        GridColouringDto {
            n: phi.n(),
            c: phi.c(),
            top: phi.top().to_vec(),
            bottom: phi.bottom().to_vec(),
        }
    }

    pub fn into_core(self) -> Result<GridColouring, String> {
        if self.top.len() != self.n || self.bottom.len() != self.n {
            return Err(format!(
                "row lengths {}/{} do not match n = {}",
                self.top.len(),
                self.bottom.len(),
                self.n
            ));
        }
        GridColouring::new(self.c, self.top, self.bottom).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockSymbolDto {
    pub k: usize,
    pub phi: GridColouringDto,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockStringDto {
    pub c: u32,
    pub ell: usize,
    pub phi_star: GridColouringDto,
    pub symbols: Vec<BlockSymbolDto>,
}

impl BlockStringDto {
    pub fn from_core(s: &BlockString) -> Self {
        BlockStringDto {
            c: s.c(),
            ell: s.ell(),
            phi_star: GridColouringDto::from_core(s.phi_star().colouring()),
            symbols: s
                .symbols()
                .iter()
                .map(|sym| BlockSymbolDto {
                    k: sym.k(),
                    phi: GridColouringDto::from_core(sym.phi().colouring()),
                })
                .collect(),
        }
    }

    pub fn into_core(self) -> Result<BlockString, String> {
        let phi_star = BlockColouring::new(self.phi_star.into_core()?);
        let symbols = self
            .symbols
            .into_iter()
            .map(|sym| {
                BlockSymbol::new(sym.k, BlockColouring::new(sym.phi.into_core()?))
                    .map_err(|e| e.to_string())
            })
            .collect::<Result<Vec<_>, _>>()?;
        BlockString::new(symbols, phi_star, self.ell, self.c).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictDto {
    pub anagram_free: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_path: Option<Vec<String>>,
}

impl VerdictDto {
    pub fn from_core(v: &ColouringVerdict) -> Self {
        VerdictDto {
            anagram_free: v.anagram_free,
            witness_path: v
                .witness
                .as_ref()
                .map(|p| p.vertices().iter().map(|v| v.label()).collect()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathDto {
    pub vertices: Vec<String>,
    pub anagramish: bool,
    pub midpoint_index: usize,
}

impl PathDto {
    pub fn new(vertices: &[GridVertex], report: &ConstructionReport) -> Self {
        PathDto {
            vertices: vertices.iter().map(|v| v.label()).collect(),
            anagramish: report.anagramish,
            midpoint_index: report.midpoint_index,
        }
    }

    pub fn parse_vertices(&self) -> Result<Vec<GridVertex>, String> {
        self.vertices
            .iter()
            .map(|l| GridVertex::parse_label(l).ok_or_else(|| format!("bad vertex label {l:?}")))
            .collect()
    }
}

/// Provenance sidecar emitted by `construct plant`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlantMetaDto {
    pub seed: u64,
    pub ell: usize,
    pub r: usize,
    pub tau: u64,
    pub m: usize,
    pub k: usize,
    pub colours: u32,
    /// eps as "num/den".
    pub eps: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructReportDto {
    pub path_valid: bool,
    pub anagramish: bool,
    pub trace_len: usize,
    pub residuals: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<u32>,
    pub midpoint_index: usize,
    pub midpoint_ok: bool,
}

impl ConstructReportDto {
    pub fn from_core(r: &ConstructionReport) -> Self {
        ConstructReportDto {
            path_valid: r.path_valid,
            anagramish: r.anagramish,
            trace_len: r.trace_len,
            residuals: r.residuals.clone(),
            first_mismatch: r.first_mismatch,
            midpoint_index: r.midpoint_index,
            midpoint_ok: r.midpoint_ok,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdsDto {
    pub t: u32,
    /// Decimal string: ell * t * 2^(t+1).
    pub h_min: String,
    /// Decimal string r0 * 2^h_min, present only when small enough to
    /// materialize.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<String>,
    pub r0: usize,
    pub sufficiency_ok: bool,
}

impl ThresholdsDto {
    pub fn from_core(t: &Thresholds) -> Self {
        ThresholdsDto {
            t: t.t,
            h_min: t.h_min.to_string(),
            n: t.n.as_ref().map(|n| n.to_string()),
            r0: t.r0,
            sufficiency_ok: t.sufficiency_ok,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NodeCheckDto {
    pub node: usize,
    pub weight: u64,
    pub lighter_child_weight: u64,
    pub affine_ok: bool,
    pub factor_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecayCheckDto {
    pub start_layer: usize,
    pub l_start: u64,
    pub l_end: u64,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateDto {
    pub h: u32,
    pub n: usize,
    pub sigma_size: usize,
    pub a_star: usize,
    pub l_x: u64,
    pub t: u32,
    pub layer_sizes: Vec<usize>,
    pub layer_lengths: Vec<u64>,
    pub coverage_ok: bool,
    pub weight_lower_ok: bool,
    pub monotone_ok: bool,
    pub hist_floor_ok: bool,
    pub additivity_ok: bool,
    pub node_checks: Vec<NodeCheckDto>,
    pub decay_checks: Vec<DecayCheckDto>,
    pub chains_ok: bool,
    pub all_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub balanced_substring: Option<SubstringWitnessDto>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubstringWitnessDto {
    pub offset: usize,
    pub length: usize,
    pub tau: u64,
}

impl CertificateDto {
    pub fn from_core(c: &UnbalancedCertificate) -> Self {
        CertificateDto {
            h: c.h,
            n: c.n,
            sigma_size: c.sigma_size,
            a_star: c.a_star,
            l_x: c.l_x,
            t: c.t,
            layer_sizes: c.layers.iter().map(|l| l.len()).collect(),
            layer_lengths: c.layer_l.clone(),
            coverage_ok: c.coverage_ok,
            weight_lower_ok: c.weight_lower_ok,
            monotone_ok: c.monotone_ok,
            hist_floor_ok: c.hist_floor_ok,
            additivity_ok: c.additivity_ok,
            node_checks: c
                .node_checks
                .iter()
                .map(|n| NodeCheckDto {
                    node: n.node,
                    weight: n.weight,
                    lighter_child_weight: n.lighter_child_weight,
                    affine_ok: n.affine_ok,
                    factor_ok: n.factor_ok,
                })
                .collect(),
            decay_checks: c
                .decay_checks
                .iter()
                .map(|d| DecayCheckDto {
                    start_layer: d.start_layer,
                    l_start: d.l_start,
                    l_end: d.l_end,
                    ok: d.ok,
                })
                .collect(),
            chains_ok: c.chain_checks.iter().all(|ch| ch.w_chain_ok && ch.l_tail_ok),
            all_ok: c.all_ok,
            balanced_substring: c.substring_balanced_witness.map(|w| SubstringWitnessDto {
                offset: w.offset,
                length: w.length,
                tau: w.tau_value,
            }),
        }
    }
}
