//! Partially persistent sorted linked list, built once by a sweep and then
//! read at any past version.
//!
//! Uses the node-copying scheme: each node carries its creation-time `next`
//! plus one timestamped overwrite; a second overwrite copies the node and
//! splices the copy into the current list, cascading towards the head.
//! Amortized O(1) space per update, O(1) per traversal step at any version.

use std::collections::BTreeMap;

pub const P_NONE: u32 = u32::MAX;
const UNSET: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct PNode {
    key: i64,
    uid: u64,
    next0: u32,
    next1: u32,
    /// Version from which `next1` applies; UNSET if never overwritten.
    t1: u32,
}

/// A read-only persistent list. Entry points are (version, node) pairs
/// handed out by the builder.
#[derive(Debug, Default, Clone)]
pub struct PList {
    nodes: Vec<PNode>,
    /// Head change log, version ascending, starting at (0, P_NONE).
    heads: Vec<(u32, u32)>,
}

/// Entry pointer: a version together with the node to start reading from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entry {
    pub version: u32,
    pub node: u32,
}

impl Entry {
    pub const EMPTY: Entry = Entry { version: 0, node: P_NONE };

    pub fn is_empty(&self) -> bool {
        self.node == P_NONE
    }
}

impl PList {
    #[inline]
    fn next_at(&self, ptr: u32, version: u32) -> u32 {
        let n = &self.nodes[ptr as usize];
        if n.t1 != UNSET && version >= n.t1 {
            n.next1
        } else {
            n.next0
        }
    }

    /// Head entry for an arbitrary version (binary search over the change log).
    pub fn head_at(&self, version: u32) -> Entry {
        let i = self.heads.partition_point(|&(v, _)| v <= version);
        Entry { version, node: self.heads[i - 1].1 }
    }

    /// Iterate (key, uid) from an entry pointer, in list order.
    pub fn iter_from(&self, e: Entry) -> PListIter<'_> {
        PListIter { list: self, version: e.version, ptr: e.node }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }
}

pub struct PListIter<'a> {
    list: &'a PList,
    version: u32,
    ptr: u32,
}

impl Iterator for PListIter<'_> {
    type Item = (i64, u64);

    fn next(&mut self) -> Option<Self::Item> {
        if self.ptr == P_NONE {
            return None;
        }
        let n = &self.list.nodes[self.ptr as usize];
        let item = (n.key, n.uid);
        self.ptr = self.list.next_at(self.ptr, self.version);
        Some(item)
    }
}

/// Builder: feed inserts/removes in sweep order, take entry snapshots
/// between mutations, then `finish()`.
#[derive(Debug)]
pub struct PListBuilder {
    list: PList,
    /// (key, uid) -> current node of the live list.
    cur: BTreeMap<(i64, u64), u32>,
    head: u32,
    version: u32,
}

impl Default for PListBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl PListBuilder {
    pub fn new() -> Self {
        PListBuilder {
            list: PList { nodes: Vec::new(), heads: vec![(0, P_NONE)] },
            cur: BTreeMap::new(),
            head: P_NONE,
            version: 0,
        }
    }

    pub fn version(&self) -> u32 {
        self.version
    }

    /// Insert an element keeping (key, uid) order. `uid` must be unique among
    /// live elements.
    pub fn insert(&mut self, key: i64, uid: u64) {
        self.version += 1;
        let pred = self.cur.range(..(key, uid)).next_back().map(|(_, &p)| p);
        let succ = match pred {
            Some(p) => self.current_next(p),
            None => self.head,
        };
        let ptr = self.list.nodes.len() as u32;
        self.list.nodes.push(PNode { key, uid, next0: succ, next1: P_NONE, t1: UNSET });
        match pred {
            Some(p) => self.set_next(p, ptr),
            None => self.set_head(ptr),
        }
        let old = self.cur.insert((key, uid), ptr);
        debug_assert!(old.is_none(), "duplicate live uid in persistent list");
    }

    /// Remove the element inserted with (key, uid).
    pub fn remove(&mut self, key: i64, uid: u64) {
        self.version += 1;
        let ptr = self.cur.remove(&(key, uid)).expect("removing element not in list");
        let succ = self.current_next(ptr);
        let pred = self.cur.range(..(key, uid)).next_back().map(|(_, &p)| p);
        match pred {
            Some(p) => self.set_next(p, succ),
            None => self.set_head(succ),
        }
    }

    /// Snapshot of the whole live list.
    pub fn snapshot(&self) -> Entry {
        Entry { version: self.version, node: self.head }
    }

    /// Snapshot starting at the first live element with (key, uid) >= the
    /// given bound; used to precompute sorted-walk entry points.
    pub fn snapshot_at(&self, key: i64, uid: u64) -> Entry {
        let node = self.cur.range((key, uid)..).next().map(|(_, &p)| p).unwrap_or(P_NONE);
        Entry { version: self.version, node }
    }

    pub fn finish(self) -> PList {
        self.list
    }

    fn current_next(&self, ptr: u32) -> u32 {
        let n = &self.list.nodes[ptr as usize];
        if n.t1 != UNSET {
            n.next1
        } else {
            n.next0
        }
    }

    fn set_head(&mut self, ptr: u32) {
        self.head = ptr;
        self.list.heads.push((self.version, ptr));
    }

    /// Point `ptr`'s next at `new` as of the current version, copying the
    /// node (and cascading) when its overwrite slot is taken.
    fn set_next(&mut self, ptr: u32, new: u32) {
        let v = self.version;
        let n = &mut self.list.nodes[ptr as usize];
        if n.t1 == UNSET {
            if n.next0 == new {
                return;
            }
            n.t1 = v;
            n.next1 = new;
            return;
        }
        if n.t1 == v {
            n.next1 = new;
            return;
        }
        // Slot taken at an earlier version: copy the node.
        let (key, uid) = (n.key, n.uid);
        let copy = self.list.nodes.len() as u32;
        self.list.nodes.push(PNode { key, uid, next0: new, next1: P_NONE, t1: UNSET });
        self.cur.insert((key, uid), copy);
        let pred = self.cur.range(..(key, uid)).next_back().map(|(_, &p)| p);
        match pred {
            Some(p) => self.set_next(p, copy),
            None => self.set_head(copy),
        }
    }
}
