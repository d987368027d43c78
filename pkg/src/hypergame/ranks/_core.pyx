# distutils: language = c++
"""Compiled rank engine: same algorithm, data layout and work accounting as
ranks.pure.PureRankEngine, with the hot loops in C++."""

from libcpp.vector cimport vector
from libcpp.queue cimport priority_queue
from libcpp.pair cimport pair

ctypedef long long i64

cdef i64 UNREACH = (<i64>1) << 62


cdef class CompiledRankEngine:
    cdef vector[i64] vstored
    cdef vector[char] vdirty
    cdef vector[char] vmarked
    cdef vector[vector[int]] out_edges
    cdef vector[vector[int]] tail_edges
    cdef vector[i64] estored
    cdef vector[int] ehead
    cdef vector[int] etail_count
    # max-heap over (-key, -vertex): pops the smallest (key, vertex) pair
    cdef priority_queue[pair[i64, i64]] heap
    cdef public long long relaxations
    cdef public long long queue_ops
    cdef public long long live_size
    cdef public long long markings
    cdef public long long max_rank
    cdef public long long unmarked

    @property
    def backend(self):
        return "compiled"

    @property
    def all_unreachable(self):
        # No unmarked vertex means no empty-tail base: nothing is reachable.
        # Lazy growth can only add unmarked vertices inside the marking call
        # itself, so once this holds at a query it holds forever.
        return self.unmarked == 0

    def __cinit__(self):
        self.relaxations = 0
        self.queue_ops = 0
        self.live_size = 0
        self.markings = 0
        self.max_rank = 0
        self.unmarked = 0

    # -- construction ------------------------------------------------------

    def add_vertex(self):
        cdef int v = <int>self.vstored.size()
        self.vstored.push_back(1)
        self.vdirty.push_back(0)
        self.vmarked.push_back(0)
        self.out_edges.push_back(vector[int]())
        self.tail_edges.push_back(vector[int]())
        self.unmarked += 1
        self.live_size += 1
        return v

    def set_initial(self, int v):
        self.vmarked[v] = 1
        self.unmarked -= 1
        self.live_size -= 1
        self.vdirty[v] = 1
        self._push(self.vstored[v], v)

    def reset_work(self):
        self.relaxations = 0
        self.queue_ops = 0

    # -- mutations ---------------------------------------------------------

    def mark(self, int v, tail_lists):
        if self.vmarked[v]:
            raise ValueError("vertex already marked")
        self.vmarked[v] = 1
        self.unmarked -= 1
        self.markings += 1
        eids = self._register(v, tail_lists)
        if not self.vdirty[v]:
            self.vdirty[v] = 1
            self._push(self.vstored[v], v)
        return eids

    def add_initial_edges(self, int v, tail_lists):
        return self._register(v, tail_lists)

    cdef _register(self, int v, tail_lists):
        cdef int e, t
        cdef i64 best, s
        eids = []
        for tails in tail_lists:
            e = <int>self.estored.size()
            best = 1
            for t_obj in tails:
                t = <int>t_obj
                s = self.vstored[t]
                if s > best:
                    best = s
                self.tail_edges[t].push_back(e)
            self.estored.push_back(best)
            self.ehead.push_back(v)
            self.etail_count.push_back(<int>len(tails))
            self.out_edges[v].push_back(e)
            self.live_size += 1 + len(tails)
            eids.append(e)
        return eids

    # -- queries -----------------------------------------------------------

    def ensure(self, int v):
        cdef i64 s, mk, r
        cdef long long pops = 0
        cdef long long budget = self.live_size + <long long>self.vstored.size() + 64
        if self.unmarked == 0:
            return UNREACH
        while True:
            if not self.vdirty[v]:
                s = self.vstored[v]
                if s == UNREACH:
                    break
                mk = self._peek()
                if mk < 0 or mk >= s:
                    break
            self._step()
            pops += 1
            if pops >= budget:
                self._flush_unreachable()
                pops = 0
        r = self.vstored[v]
        if r != UNREACH and r > self.max_rank:
            self.max_rank = r
        return r

    def drain(self, threshold):
        cdef i64 t = <i64>threshold
        cdef i64 mk
        cdef long long pops = 0
        cdef long long budget = self.live_size + <long long>self.vstored.size() + 64
        if self.unmarked == 0:
            return
        while True:
            mk = self._peek()
            if mk < 0 or mk > t:
                return
            self._step()
            pops += 1
            if pops >= budget:
                self._flush_unreachable()
                pops = 0

    def frontier(self):
        if self.unmarked == 0:
            return UNREACH
        cdef i64 mk = self._peek()
        return UNREACH if mk < 0 else mk - 1

    def vertex_value(self, int v):
        if self.unmarked == 0:
            return UNREACH
        return self.vstored[v]

    def vertex_exact(self, int v):
        cdef i64 s, mk
        if self.unmarked == 0:
            return True
        if self.vdirty[v]:
            return False
        s = self.vstored[v]
        if s == UNREACH:
            return True
        mk = self._peek()
        return mk < 0 or mk >= s

    def edge_value(self, int e):
        if self.unmarked == 0:
            return UNREACH
        return self.estored[e]

    def edge_exact(self, int e):
        cdef i64 s, mk
        if self.unmarked == 0:
            return True
        s = self.estored[e]
        if s == UNREACH:
            return True
        mk = self._peek()
        return mk < 0 or mk > s

    # -- internals ---------------------------------------------------------

    cdef void _push(self, i64 key, i64 v):
        self.queue_ops += 1
        self.heap.push(pair[i64, i64](-key, -v))

    cdef i64 _peek(self):
        cdef pair[i64, i64] top
        cdef i64 key, v
        while not self.heap.empty():
            top = self.heap.top()
            key = -top.first
            v = -top.second
            if self.vdirty[v] and key == self.vstored[v]:
                return key
            self.heap.pop()
            self.queue_ops += 1
        return -1

    cdef void _step(self) except *:
        cdef pair[i64, i64] top = self.heap.top()
        cdef i64 key = -top.first
        cdef int y = <int>(-top.second)
        cdef i64 best, s, c, old
        cdef int e, d
        cdef size_t i
        self.heap.pop()
        self.queue_ops += 1
        if not self.vdirty[y] or key != self.vstored[y]:
            return
        self.relaxations += 1
        best = UNREACH
        for i in range(self.out_edges[y].size()):
            e = self.out_edges[y][i]
            s = self.estored[e]
            if s < best:
                best = s
        c = best + 1 if best != UNREACH else UNREACH
        if c > <i64>self.vstored.size():
            c = UNREACH
        if c == key:
            self.vdirty[y] = 0
            return
        if c < key:
            raise AssertionError("stored ranks are nondecreasing")
        self.vstored[y] = c
        if c == UNREACH:
            self.vdirty[y] = 0
        else:
            self._push(c, y)
        for i in range(self.tail_edges[y].size()):
            e = self.tail_edges[y][i]
            old = self.estored[e]
            if c > old:
                self.estored[e] = c
                self.relaxations += 1
                d = self.ehead[e]
                if not self.vdirty[d] and self.vstored[d] == old + 1:
                    self.vdirty[d] = 1
                    self._push(self.vstored[d], d)

    cdef void _flush_unreachable(self):
        # Recompute the well-founded reachable set (counter pass from the
        # unmarked bases over live edges) and finalize everything outside
        # it, purging rank-creep from the queue.
        cdef int n = <int>self.vstored.size()
        cdef int m = <int>self.estored.size()
        cdef vector[char] good = vector[char](n, 0)
        cdef vector[int] cnt = self.etail_count
        cdef vector[int] stack
        cdef int v, h, e, d
        cdef i64 old
        cdef size_t i
        for v in range(n):
            if not self.vmarked[v]:
                good[v] = 1
                stack.push_back(v)
        self.relaxations += n
        while not stack.empty():
            v = stack.back()
            stack.pop_back()
            for i in range(self.tail_edges[v].size()):
                e = self.tail_edges[v][i]
                cnt[e] -= 1
                self.relaxations += 1
                if cnt[e] == 0:
                    h = self.ehead[e]
                    if not good[h]:
                        good[h] = 1
                        stack.push_back(h)
        self.relaxations += m
        for v in range(n):
            if not good[v] and self.vstored[v] != UNREACH:
                self.vstored[v] = UNREACH
                self.vdirty[v] = 0
        for e in range(m):
            old = self.estored[e]
            if cnt[e] > 0 and old != UNREACH:
                self.estored[e] = UNREACH
                d = self.ehead[e]
                if good[d] and not self.vdirty[d] and self.vstored[d] == old + 1:
                    self.vdirty[d] = 1
                    self._push(self.vstored[d], d)
