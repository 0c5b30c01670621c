//! The limited-workspace machine: read-only input, a cell-budgeted
//! read-write arena, and a write-only output stream.
//!
//! A cell is one tagged word. Its payload is a bounded integer, a reference
//! into the input, or an algebraic point described by the input sites it is
//! constructed from. The arena counts live cells against a budget and
//! remembers the peak; exceeding the budget aborts the run.

use crate::error::{Error, Result};
use crate::geom::kernel::IntPoint;
use crate::geom::PointSet;

/// How an algebraic point is obtained from input sites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Center of the circle through three sites (a Voronoi vertex).
    Circumcenter([u32; 3]),
}

/// Payload of one workspace cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cell {
    Int(i64),
    /// Index into the read-only input; `None` is the null reference.
    Input(Option<u32>),
    Algebraic(Construction),
}

impl Cell {
    pub const NIL: Cell = Cell::Input(None);

    pub fn site(i: usize) -> Cell {
        Cell::Input(Some(i as u32))
    }

    pub fn opt_site(i: Option<usize>) -> Cell {
        Cell::Input(i.map(|v| v as u32))
    }

    pub fn as_site(self) -> Option<usize> {
        match self {
            Cell::Input(i) => i.map(|v| v as usize),
            other => panic!("cell holds {other:?}, not an input reference"),
        }
    }

    pub fn as_int(self) -> i64 {
        match self {
            Cell::Int(v) => v,
            other => panic!("cell holds {other:?}, not an integer"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Handle {
    index: u32,
    generation: u32,
}

/// A block of cells charged against the budget without individual storage.
/// Used for fixed-size records whose fields are one cell each, and for the
/// small diagrams of the trade-off algorithm.
#[derive(Debug, PartialEq, Eq)]
#[must_use = "reservations must be released"]
pub struct Reservation {
    cells: usize,
    id: u64,
}

impl Reservation {
    pub fn cells(&self) -> usize {
        self.cells
    }
}

#[derive(Clone, Debug)]
struct Slot {
    generation: u32,
    cell: Option<Cell>,
}

#[derive(Debug)]
pub struct WorkspaceArena {
    budget: usize,
    slots: Vec<Slot>,
    free: Vec<u32>,
    live: usize,
    peak: usize,
    reserved: Vec<(u64, usize)>,
    next_reservation: u64,
}

impl WorkspaceArena {
    pub fn new(budget: usize) -> Self {
        WorkspaceArena {
            budget,
            slots: Vec::new(),
            free: Vec::new(),
            live: 0,
            peak: 0,
            reserved: Vec::new(),
            next_reservation: 0,
        }
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn live(&self) -> usize {
        self.live
    }

    pub fn peak(&self) -> usize {
        self.peak
    }

    fn charge(&mut self, cells: usize) -> Result<()> {
        if self.live + cells > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        self.live += cells;
        self.peak = self.peak.max(self.live);
        Ok(())
    }

    pub fn alloc(&mut self, cell: Cell) -> Result<Handle> {
        self.charge(1)?;
        let index = match self.free.pop() {
            Some(i) => {
                self.slots[i as usize].cell = Some(cell);
                i
            }
            None => {
                self.slots.push(Slot { generation: 0, cell: Some(cell) });
                (self.slots.len() - 1) as u32
            }
        };
        Ok(Handle { index, generation: self.slots[index as usize].generation })
    }

    pub fn free(&mut self, h: Handle) -> Result<()> {
        let slot = self.slots.get_mut(h.index as usize).ok_or(Error::DoubleFree)?;
        if slot.generation != h.generation || slot.cell.is_none() {
            return Err(Error::DoubleFree);
        }
        slot.cell = None;
        slot.generation = slot.generation.wrapping_add(1);
        self.free.push(h.index);
        self.live -= 1;
        Ok(())
    }

    fn slot(&self, h: Handle) -> &Slot {
        let s = &self.slots[h.index as usize];
        assert!(s.generation == h.generation && s.cell.is_some(), "stale cell handle");
        s
    }

    #[inline]
    pub fn get(&self, h: Handle) -> Cell {
        self.slot(h).cell.expect("live slot")
    }

    #[inline]
    pub fn set(&mut self, h: Handle, cell: Cell) {
        self.slot(h);
        self.slots[h.index as usize].cell = Some(cell);
    }

    pub fn site(&self, h: Handle) -> Option<usize> {
        self.get(h).as_site()
    }

    pub fn int(&self, h: Handle) -> i64 {
        self.get(h).as_int()
    }

    pub fn reserve(&mut self, cells: usize) -> Result<Reservation> {
        self.charge(cells)?;
        let id = self.next_reservation;
        self.next_reservation += 1;
        self.reserved.push((id, cells));
        Ok(Reservation { cells, id })
    }

    pub fn release(&mut self, r: Reservation) {
        let pos = self
            .reserved
            .iter()
            .position(|&(id, _)| id == r.id)
            .expect("reservation belongs to this arena");
        self.reserved.swap_remove(pos);
        self.live -= r.cells;
    }
}

/// Append-only sink for algorithm output. Algorithms get `&mut` access and
/// can only call [`emit`](OutputStream::emit); records become reachable
/// again only after the run, through [`into_inner`](OutputStream::into_inner).
pub struct OutputStream<T> {
    sink: Box<dyn FnMut(T) + Send>,
    emitted: u64,
}

impl<T: Send + 'static> OutputStream<T> {
    pub fn new(sink: impl FnMut(T) + Send + 'static) -> Self {
        OutputStream { sink: Box::new(sink), emitted: 0 }
    }

    /// A stream that discards everything but the count.
    pub fn counting() -> Self {
        Self::new(|_| {})
    }

    pub fn emit(&mut self, record: T) {
        (self.sink)(record);
        self.emitted += 1;
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }
}

/// Collects records for inspection after the run.
pub struct Collector<T> {
    records: std::sync::Arc<std::sync::Mutex<Vec<T>>>,
}

impl<T: Send + 'static> Collector<T> {
    pub fn new() -> (Self, OutputStream<T>) {
        let records = std::sync::Arc::new(std::sync::Mutex::new(Vec::new()));
        let sink = records.clone();
        let stream = OutputStream::new(move |r| sink.lock().expect("collector lock").push(r));
        (Collector { records }, stream)
    }

    /// Takes the collected records. Call once the stream has been dropped
    /// or the run has finished.
    pub fn into_inner(self) -> Vec<T> {
        std::mem::take(&mut *self.records.lock().expect("collector lock"))
    }
}

/// Unit-operation tally: one per site read, one per predicate, plus the
/// declared cost of every small diagram construction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StepCounter {
    steps: u64,
}

impl StepCounter {
    #[inline]
    pub fn tick(&mut self) {
        self.steps += 1;
    }

    #[inline]
    pub fn add(&mut self, units: u64) {
        self.steps += units;
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }
}

/// One run of an algorithm: input, arena and step counter.
pub struct Machine<'a> {
    input: &'a PointSet,
    pub arena: WorkspaceArena,
    pub steps: StepCounter,
}

impl<'a> Machine<'a> {
    pub fn new(input: &'a PointSet, budget: usize) -> Self {
        Machine { input, arena: WorkspaceArena::new(budget), steps: StepCounter::default() }
    }

    pub fn n(&self) -> usize {
        self.input.len()
    }

    /// Reads site `i` from the input (one step).
    #[inline]
    pub fn read(&mut self, i: usize) -> &'a IntPoint {
        self.steps.tick();
        self.input.grid(i)
    }

    /// The input itself, for operations that are not charged per read
    /// (small diagrams, which pay a declared construction cost instead).
    pub fn input(&self) -> &'a PointSet {
        self.input
    }

    pub fn alloc(&mut self, c: Cell) -> Result<Handle> {
        self.arena.alloc(c)
    }

    pub fn free(&mut self, h: Handle) -> Result<()> {
        self.arena.free(h)
    }

    /// Allocates `N` cells initialised to the null reference.
    pub fn frame<const N: usize>(&mut self) -> Result<[Handle; N]> {
        let mut out = [Handle { index: 0, generation: 0 }; N];
        for slot in out.iter_mut() {
            *slot = self.arena.alloc(Cell::NIL)?;
        }
        Ok(out)
    }

    pub fn free_frame<const N: usize>(&mut self, frame: [Handle; N]) -> Result<()> {
        for h in frame {
            self.arena.free(h)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alloc_respects_budget() {
        let mut a = WorkspaceArena::new(1);
        let h = a.alloc(Cell::Int(7)).unwrap();
        assert_eq!((a.live(), a.peak()), (1, 1));
        assert_eq!(a.int(h), 7);
        assert!(matches!(a.alloc(Cell::Int(8)), Err(Error::BudgetExceeded { budget: 1 })));
    }

    #[test]
    fn peak_tracks_maximum_not_total() {
        let mut a = WorkspaceArena::new(4);
        let h = a.alloc(Cell::Int(1)).unwrap();
        a.free(h).unwrap();
        let _h2 = a.alloc(Cell::site(3)).unwrap();
        assert_eq!((a.peak(), a.live()), (1, 1));
    }

    #[test]
    fn double_free_is_detected() {
        let mut a = WorkspaceArena::new(4);
        let h = a.alloc(Cell::Int(1)).unwrap();
        a.free(h).unwrap();
        assert!(matches!(a.free(h), Err(Error::DoubleFree)));
        // the slot is reused, but the old handle stays dead
        let h2 = a.alloc(Cell::Int(2)).unwrap();
        assert!(matches!(a.free(h), Err(Error::DoubleFree)));
        a.free(h2).unwrap();
        assert_eq!((a.live(), a.peak()), (0, 1));
    }

    #[test]
    fn reservations_count_against_budget() {
        let mut a = WorkspaceArena::new(10);
        let r = a.reserve(8).unwrap();
        assert!(a.reserve(3).is_err());
        let h = a.alloc(Cell::NIL).unwrap();
        a.release(r);
        assert_eq!((a.live(), a.peak()), (1, 9));
        a.free(h).unwrap();
    }

    #[test]
    fn stream_counts_and_preserves_order() {
        let (col, mut s) = Collector::new();
        assert_eq!(s.emitted(), 0);
        s.emit("e1");
        s.emit("e2");
        assert_eq!(s.emitted(), 2);
        drop(s);
        assert_eq!(col.into_inner(), vec!["e1", "e2"]);

        let (col, mut s) = Collector::new();
        for i in 0..100 {
            s.emit(i);
        }
        assert_eq!(s.emitted(), 100);
        assert_eq!(col.into_inner(), (0..100).collect::<Vec<_>>());
    }
}
