//! Shared mutable clustering state.
//!
//! Per-vertex: lower/upper bounds on `|N_eps[v]|`, role, and a packed
//! `(height, parent)` word for the cluster forest. Per-edge: similarity
//! status. All fields are atomics so phases can update them from any worker.

use std::sync::atomic::{AtomicBool, AtomicU32, AtomicU64, AtomicU8, Ordering};

use crate::graph::Graph;
use crate::VertexId;

/// Parent value of a hub.
pub const HUB: i32 = -1;
/// Parent value of a vertex in no cluster.
pub const UNCLUSTERED: i32 = -2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Role {
    Unknown = 0,
    Core = 1,
    NonCore = 2,
    /// Non-core vertex attached to a cluster.
    Member = 3,
    Hub = 4,
    Outlier = 5,
}

impl Role {
    fn from_u8(x: u8) -> Role {
        match x {
            0 => Role::Unknown,
            1 => Role::Core,
            2 => Role::NonCore,
            3 => Role::Member,
            4 => Role::Hub,
            5 => Role::Outlier,
            _ => unreachable!("corrupt role byte {x}"),
        }
    }

    /// Single-letter code used in result files.
    pub fn code(self) -> char {
        match self {
            Role::Core => 'C',
            Role::Member => 'M',
            Role::Hub => 'H',
            Role::Outlier => 'O',
            Role::NonCore => 'N',
            Role::Unknown => '?',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum SimilarityStatus {
    Unknown = 0,
    Similar = 1,
    Dissimilar = 2,
}

impl SimilarityStatus {
    pub fn from_u8(x: u8) -> Option<Self> {
        match x {
            0 => Some(SimilarityStatus::Unknown),
            1 => Some(SimilarityStatus::Similar),
            2 => Some(SimilarityStatus::Dissimilar),
            _ => None,
        }
    }

    pub fn from_bool(similar: bool) -> Self {
        if similar {
            SimilarityStatus::Similar
        } else {
            SimilarityStatus::Dissimilar
        }
    }
}

/// Per-edge similarity statuses. Only `Unknown -> Similar|Dissimilar`
/// transitions are possible.
#[derive(Debug)]
pub struct SimArray(Box<[AtomicU8]>);

impl SimArray {
    pub fn new(m: usize) -> Self {
        SimArray((0..m).map(|_| AtomicU8::new(0)).collect())
    }

    /// Restores statuses from their byte encoding.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        SimArray(bytes.iter().map(|&b| AtomicU8::new(b)).collect())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().map(|s| s.load(Ordering::Acquire)).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, e: usize) -> SimilarityStatus {
        SimilarityStatus::from_u8(self.0[e].load(Ordering::Acquire)).expect("corrupt status")
    }

    /// Records a decided status. Returns `true` if this call made the
    /// transition, `false` if the edge was already decided.
    #[inline]
    pub fn decide(&self, e: usize, status: SimilarityStatus) -> bool {
        debug_assert_ne!(status, SimilarityStatus::Unknown);
        self.0[e]
            .compare_exchange(0, status as u8, Ordering::AcqRel, Ordering::Acquire)
            .is_ok()
    }
}

#[inline]
pub(crate) fn pack(height: u32, parent: i32) -> u64 {
    ((height as u64) << 32) | (parent as u32 as u64)
}

#[inline]
pub(crate) fn parent_of(word: u64) -> i32 {
    word as u32 as i32
}

#[inline]
pub(crate) fn height_of(word: u64) -> u32 {
    (word >> 32) as u32
}

/// Resident per-vertex state. Indexed by global vertex id.
#[derive(Debug)]
pub struct VertexState {
    pub(crate) lower: Box<[AtomicU32]>,
    pub(crate) upper: Box<[AtomicU32]>,
    pub(crate) role: Box<[AtomicU8]>,
    /// `(height << 32) | parent as u32`, updated with one CAS.
    pub(crate) link: Box<[AtomicU64]>,
    /// Non-core vertex found similar to cores of two different clusters.
    pub(crate) shared: Box<[AtomicBool]>,
}

impl VertexState {
    /// Bounds start at `1` and `degree + 1`; every vertex is in its own
    /// epsilon-neighborhood.
    pub fn from_degrees<I: IntoIterator<Item = u32>>(degrees: I) -> Self {
        let upper: Box<[AtomicU32]> = degrees.into_iter().map(|d| AtomicU32::new(d + 1)).collect();
        let n = upper.len();
        VertexState {
            lower: (0..n).map(|_| AtomicU32::new(1)).collect(),
            upper,
            role: (0..n).map(|_| AtomicU8::new(Role::Unknown as u8)).collect(),
            link: (0..n).map(|_| AtomicU64::new(pack(1, UNCLUSTERED))).collect(),
            shared: (0..n).map(|_| AtomicBool::new(false)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.role.len()
    }

    #[inline]
    pub fn lower(&self, v: VertexId) -> u32 {
        self.lower[v as usize].load(Ordering::Acquire)
    }

    #[inline]
    pub fn upper(&self, v: VertexId) -> u32 {
        self.upper[v as usize].load(Ordering::Acquire)
    }

    #[inline]
    pub fn role(&self, v: VertexId) -> Role {
        Role::from_u8(self.role[v as usize].load(Ordering::Acquire))
    }

    #[inline]
    pub fn parent(&self, v: VertexId) -> i32 {
        parent_of(self.link[v as usize].load(Ordering::Acquire))
    }

    #[inline]
    pub fn height(&self, v: VertexId) -> u32 {
        height_of(self.link[v as usize].load(Ordering::Acquire))
    }

    #[inline]
    pub fn is_shared(&self, v: VertexId) -> bool {
        self.shared[v as usize].load(Ordering::Acquire)
    }

    /// Moves `v` from `Unknown` to `role`; no-op once decided.
    #[inline]
    pub(crate) fn decide_role(&self, v: VertexId, role: Role) {
        let _ = self.role[v as usize].compare_exchange(
            Role::Unknown as u8,
            role as u8,
            Ordering::AcqRel,
            Ordering::Acquire,
        );
    }

    #[inline]
    pub(crate) fn store_role(&self, v: VertexId, role: Role) {
        self.role[v as usize].store(role as u8, Ordering::Release);
    }

    /// Replaces the parent, keeping the height. Only for phases where no
    /// other worker writes `v`'s link word.
    #[inline]
    pub(crate) fn store_parent(&self, v: VertexId, parent: i32) {
        let slot = &self.link[v as usize];
        let h = height_of(slot.load(Ordering::Acquire));
        slot.store(pack(h, parent), Ordering::Release);
    }

    #[inline]
    pub(crate) fn load_link(&self, v: VertexId) -> u64 {
        self.link[v as usize].load(Ordering::Acquire)
    }

    #[inline]
    pub(crate) fn cas_link(&self, v: VertexId, current: u64, new: u64) -> Result<u64, u64> {
        self.link[v as usize].compare_exchange(current, new, Ordering::AcqRel, Ordering::Acquire)
    }

    /// Test hook: overwrite a vertex's forest entry.
    pub fn set_link(&self, v: VertexId, parent: i32, height: u32) {
        self.link[v as usize].store(pack(height, parent), Ordering::Release);
    }

    /// Test hook: overwrite a vertex's role.
    pub fn set_role(&self, v: VertexId, role: Role) {
        self.store_role(v, role);
    }
}

/// Full in-memory state: per-vertex arrays plus one status per edge.
#[derive(Debug)]
pub struct ClusterState {
    pub vertices: VertexState,
    pub sim: SimArray,
}

impl ClusterState {
    pub fn new(g: &Graph) -> Self {
        ClusterState {
            vertices: VertexState::from_degrees((0..g.n() as VertexId).map(|v| g.degree(v) as u32)),
            sim: SimArray::new(g.m()),
        }
    }
}

/// Fresh state for `g`: bounds `[1, deg + 1]`, every role and status unknown,
/// every parent `-2`.
pub fn init_state(g: &Graph) -> ClusterState {
    ClusterState::new(g)
}
