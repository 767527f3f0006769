#include "rtl/search.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "rtl/errors.hpp"
#include "rtl/kernels.hpp"

namespace rtl {

std::string_view to_string(SearchStatus s) noexcept {
    switch (s) {
        case SearchStatus::exact: return "exact";
        case SearchStatus::cap_reached: return "cap_reached";
        case SearchStatus::budget_exhausted: return "budget_exhausted";
    }
    return "?";
}

SearchStatus parse_status(std::string_view text) {
    if (text == "exact") return SearchStatus::exact;
    if (text == "cap_reached") return SearchStatus::cap_reached;
    if (text == "budget_exhausted") return SearchStatus::budget_exhausted;
    throw InvalidArgument("unknown search status '" + std::string(text) + "'");
}

namespace {

constexpr std::uint64_t kMaxCandidates = std::uint64_t{1} << 24;

std::uint32_t clamp32(Nat v) { return static_cast<std::uint32_t>(std::min<Nat>(v, std::numeric_limits<std::uint32_t>::max())); }

// Tuples of one domain in branching order: (max coordinate, lexicographic).
struct BranchOrder {
    explicit BranchOrder(const TupleDomain& dom) : domain(dom) {
        dom.for_each([&](const Tuple& t, std::size_t) { tuples.push_back(t); });
        pos_of_rank.resize(tuples.size());
        std::vector<std::size_t> order(tuples.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return tuples[a].back() < tuples[b].back(); });
        std::vector<Tuple> sorted;
        sorted.reserve(tuples.size());
        for (std::size_t p = 0; p < order.size(); ++p) {
            pos_of_rank[order[p]] = p;
            sorted.push_back(tuples[order[p]]);
        }
        rank_of_pos = std::move(order);
        tuples = std::move(sorted);
    }

    std::size_t pos(std::span<const Nat> t) const { return pos_of_rank[domain.rank(t)]; }

    TupleDomain domain;
    std::vector<Tuple> tuples;  // by position
    std::vector<std::size_t> pos_of_rank;
    std::vector<std::size_t> rank_of_pos;
};

// Adjacent Ramsey: value r-tuples, f-limited, no window pair x_1..x_d <= x_2..x_{d+1}.
class ArProblem {
public:
    using Scratch = simd::ColumnBlock;

    ArProblem(const Params& p, Nat R) : params_(p), order_(TupleDomain(p.d, 0, R)), width_(static_cast<unsigned>(p.r)) {
        if (p.r == 0 || p.r > 1024) throw InvalidArgument("AR width must be in [1, 1024]");
        const std::size_t n = order_.tuples.size();
        bound_.resize(n);
        count_.resize(n);
        preds_.resize(n);
        for (std::size_t pos = 0; pos < n; ++pos) {
            const Tuple& t = order_.tuples[pos];
            bound_[pos] = clamp32(sat_add(p.f(t.back()), 1));
            Nat count = 1;
            for (unsigned k = 0; k < width_; ++k) count = sat_mul(count, Nat{bound_[pos]} + 1);
            if (count > kMaxCandidates) throw ResourceError("too many candidate values per tuple");
            count_[pos] = count;
            // Windows w with (w, t) overlapping: w = (y, t_0 .. t_{d-2}) with y < t_0.
            Tuple w(p.d);
            for (unsigned k = 1; k < p.d; ++k) w[k] = t[k - 1];
            for (Nat y = 0; y < t[0]; ++y) {
                w[0] = y;
                preds_[pos].push_back(order_.pos(w));
            }
        }
    }

    std::size_t positions() const noexcept { return order_.tuples.size(); }
    unsigned width() const noexcept { return width_; }
    bool trivially_good() const noexcept { return false; }
    std::size_t candidates(std::size_t pos) const noexcept { return count_[pos]; }

    void candidate_value(std::size_t pos, std::size_t cand, std::uint32_t* out) const noexcept {
        const std::size_t radix = std::size_t{bound_[pos]} + 1;
        for (unsigned k = width_; k-- > 0;) {
            out[k] = static_cast<std::uint32_t>(cand % radix);
            cand /= radix;
        }
    }

    void prepare(std::size_t pos, const std::uint32_t* values, Scratch& s) const {
        s.reset(width_, preds_[pos].size());
        for (std::size_t q : preds_[pos]) s.push_row({values + q * width_, width_});
    }

    bool consistent(std::size_t, const std::uint32_t* cand, const std::uint32_t*, Scratch& s) const noexcept {
        return s.first_dominated({cand, width_}, simd::Dominance::RowLeqProbe) == simd::npos;
    }

    Certificate make_certificate(const std::vector<std::uint32_t>& values, Nat R) const {
        ArColouring c(order_.domain, width_);
        for (std::size_t pos = 0; pos < positions(); ++pos) {
            c.set(order_.rank_of_pos[pos], std::span<const std::uint32_t>(values.data() + pos * width_, width_));
        }
        return {params_, R, std::move(c)};
    }

private:
    Params params_;
    BranchOrder order_;
    unsigned width_;
    std::vector<std::uint32_t> bound_;
    std::vector<std::size_t> count_;
    std::vector<std::vector<std::size_t>> preds_;
};

// Shared helper for PH/KM witness search: enumerates (k)-subsets of `pool`.
template <class F>
bool pick_subsets(const Tuple& pool, unsigned k, F&& fn) {
    if (k > pool.size()) return true;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        if (!fn(idx)) return false;
        int j = static_cast<int>(k) - 1;
        while (j >= 0 && idx[static_cast<std::size_t>(j)] == pool.size() - k + static_cast<std::size_t>(j)) --j;
        if (j < 0) return true;
        ++idx[static_cast<std::size_t>(j)];
        for (auto i = static_cast<std::size_t>(j) + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
}

// Subsets whose top d elements are t are complete once t is assigned, so each
// witness is examined exactly when its lexicographically last subset gets a value.
class SubsetProblemBase {
public:
    struct Scratch {};

    SubsetProblemBase(const Params& p, Nat R) : params_(p), order_(TupleDomain(p.d, p.lo(), R)), R_(R) {}

    std::size_t positions() const noexcept { return order_.tuples.size(); }
    unsigned width() const noexcept { return 1; }
    std::size_t candidates(std::size_t pos) const noexcept { return count_[pos]; }
    void candidate_value(std::size_t, std::size_t cand, std::uint32_t* out) const noexcept {
        out[0] = static_cast<std::uint32_t>(cand);
    }
    void prepare(std::size_t, const std::uint32_t*, Scratch&) const noexcept {}

protected:
    std::uint32_t colour_of(const std::uint32_t* values, std::span<const Nat> s) const { return values[order_.pos(s)]; }

    Params params_;
    BranchOrder order_;
    Nat R_;
    std::vector<std::size_t> count_;
};

class PhProblem : public SubsetProblemBase {
public:
    PhProblem(const Params& p, Nat R) : SubsetProblemBase(p, R) {
        if (p.r == 0 && positions() > 0) throw InvalidArgument("PH needs at least one colour");
        if (p.r > kMaxCandidates) throw ResourceError("too many colours");
        count_.assign(positions(), static_cast<std::size_t>(p.r));
        for (Nat h = p.m; h <= R; ++h) {
            const Nat s = ph_required_size(p.f, h);
            if (s <= p.d && s <= R - h + 1) trivial_ = true;
            size_.push_back(s);
        }
    }

    bool trivially_good() const noexcept { return trivial_; }

    bool consistent(std::size_t pos, const std::uint32_t* cand, const std::uint32_t* values, Scratch&) const {
        const Tuple& t = order_.tuples[pos];
        const unsigned d = params_.d;
        for (Nat h = params_.m; h < t[0]; ++h) {
            const Nat s = size_[h - params_.m];
            if (s <= d) continue;
            const Nat low = s - d;
            if (t[0] - h < low) continue;
            Tuple lows{h};
            if (extend(t, cand[0], values, lows, low)) return false;
        }
        return true;
    }

    Certificate make_certificate(const std::vector<std::uint32_t>& values, Nat R) const {
        PhColouring c(order_.domain, params_.r);
        for (std::size_t pos = 0; pos < positions(); ++pos) c.set(order_.rank_of_pos[pos], values[pos]);
        return {params_, R, std::move(c)};
    }

private:
    // Checks the subsets created by lows.back(), then grows lows toward `need` elements.
    bool extend(const Tuple& t, std::uint32_t colour, const std::uint32_t* values, Tuple& lows, Nat need) const {
        if (!fresh_subsets_match(t, colour, values, lows)) return false;
        if (lows.size() == need) return true;
        const Nat remaining = need - lows.size();
        for (Nat e = lows.back() + 1; e < t[0] && t[0] - e >= remaining; ++e) {
            lows.push_back(e);
            if (extend(t, colour, values, lows, need)) return true;
            lows.pop_back();
        }
        return false;
    }

    bool fresh_subsets_match(const Tuple& t, std::uint32_t colour, const std::uint32_t* values, const Tuple& lows) const {
        const unsigned d = params_.d;
        Tuple pool(lows.begin(), lows.end() - 1);
        const std::size_t lower = pool.size();
        pool.insert(pool.end(), t.begin(), t.end());
        const Nat e = lows.back();
        Tuple s(d);
        return pick_subsets(pool, d - 1, [&](const std::vector<std::size_t>& idx) {
            std::size_t out = 0, k = 0;
            for (; k < idx.size() && idx[k] < lower; ++k) s[out++] = pool[idx[k]];
            s[out++] = e;
            for (; k < idx.size(); ++k) s[out++] = pool[idx[k]];
            return colour_of(values, s) == colour;
        });
    }

    bool trivial_ = false;
    std::vector<Nat> size_;
};

class KmProblem : public SubsetProblemBase {
public:
    KmProblem(const Params& p, Nat R) : SubsetProblemBase(p, R) {
        count_.resize(positions());
        for (std::size_t pos = 0; pos < positions(); ++pos) {
            const Nat c = sat_add(p.f(order_.tuples[pos].front()), 1);
            if (c > kMaxCandidates) throw ResourceError("too many candidate values per tuple");
            count_[pos] = static_cast<std::size_t>(c);
        }
        const Nat points = R >= p.a ? R - p.a + 1 : 0;
        trivial_ = (p.m <= p.d || p.d == 1) && points >= p.m;
    }

    bool trivially_good() const noexcept { return trivial_; }

    bool consistent(std::size_t pos, const std::uint32_t* cand, const std::uint32_t* values, Scratch&) const {
        const Tuple& t = order_.tuples[pos];
        const Nat d = params_.d;
        if (params_.m <= d) return true;
        const Nat need = params_.m - d;
        if (t[0] - params_.a < need) return true;
        Tuple lows;
        return !extend(t, cand[0], values, lows, need, params_.a);
    }

    Certificate make_certificate(const std::vector<std::uint32_t>& values, Nat R) const {
        KmColouring c(order_.domain);
        for (std::size_t pos = 0; pos < positions(); ++pos) c.set(order_.rank_of_pos[pos], values[pos]);
        return {params_, R, std::move(c)};
    }

private:
    bool extend(const Tuple& t, std::uint32_t top, const std::uint32_t* values, Tuple& lows, Nat need, Nat from) const {
        if (lows.size() == need) return true;
        const Nat remaining = need - lows.size();
        for (Nat e = from; e < t[0] && t[0] - e >= remaining; ++e) {
            lows.push_back(e);
            if (fresh_subsets_match(t, top, values, lows) && extend(t, top, values, lows, need, e + 1)) return true;
            lows.pop_back();
        }
        return false;
    }

    // Every subset with minimum h must share the colour of {h, t_1, ..., t_{d-1}}.
    bool fresh_subsets_match(const Tuple& t, std::uint32_t top, const std::uint32_t* values, const Tuple& lows) const {
        (void)top;
        const unsigned d = params_.d;
        Tuple pool(lows.begin(), lows.end() - 1);
        const std::size_t lower = pool.size();
        pool.insert(pool.end(), t.begin(), t.end());
        const Nat e = lows.back();
        Tuple s(d), ref(d);
        return pick_subsets(pool, d - 1, [&](const std::vector<std::size_t>& idx) {
            std::size_t out = 0, k = 0;
            for (; k < idx.size() && idx[k] < lower; ++k) s[out++] = pool[idx[k]];
            s[out++] = e;
            for (; k < idx.size(); ++k) s[out++] = pool[idx[k]];
            ref[0] = s[0];
            for (unsigned j = 1; j < d; ++j) ref[j] = t[j];
            return colour_of(values, s) == colour_of(values, ref);
        });
    }

    bool trivial_ = false;
};

enum class TaskState : std::uint8_t { pending, none, found, budget, cancelled };

struct Budget {
    std::atomic<std::uint64_t> used{0};
    std::uint64_t limit;
    std::atomic<bool> exhausted{false};

    bool spend() noexcept {
        if (used.fetch_add(1, std::memory_order_relaxed) >= limit) {
            exhausted.store(true, std::memory_order_relaxed);
            return false;
        }
        return true;
    }
};

template <class P>
class Engine {
public:
    Engine(const P& problem, std::uint64_t budget, unsigned width) : p_(problem), threads_(std::max(1u, width)) {
        budget_.limit = budget;
    }

    // Returns the canonical first bad colouring's values, if any.
    std::optional<std::vector<std::uint32_t>> run(bool& exhausted, std::uint64_t& nodes) {
        exhausted = false;
        const std::size_t n = p_.positions();
        const unsigned w = p_.width();
        if (p_.trivially_good()) {
            nodes = 0;
            return std::nullopt;
        }

        const std::size_t split = std::min<std::size_t>(2, n);
        std::vector<std::vector<std::uint32_t>> prefixes;
        {
            Worker root = make_worker();
            enumerate_prefixes(root, 0, split, prefixes);
        }
        if (budget_.exhausted) {
            exhausted = true;
            nodes = budget_.used.load();
            return std::nullopt;
        }

        std::vector<TaskState> state(prefixes.size(), TaskState::pending);
        std::vector<std::vector<std::uint32_t>> solution(prefixes.size());
        std::atomic<std::size_t> next{0};
        std::atomic<std::size_t> best{prefixes.size()};

        auto work = [&]() {
            Worker wk = make_worker();
            while (true) {
                const std::size_t task = next.fetch_add(1);
                if (task >= prefixes.size()) return;
                if (task > best.load()) {
                    state[task] = TaskState::cancelled;
                    continue;
                }
                std::copy(prefixes[task].begin(), prefixes[task].end(), wk.values.begin());
                Abort abort = Abort::none;
                const bool found = dfs(wk, split, task, best, abort);
                if (found) {
                    solution[task].assign(wk.values.begin(), wk.values.begin() + static_cast<std::ptrdiff_t>(n * w));
                    state[task] = TaskState::found;
                    std::size_t cur = best.load();
                    while (task < cur && !best.compare_exchange_weak(cur, task)) {}
                } else {
                    state[task] = abort == Abort::budget ? TaskState::budget
                                  : abort == Abort::cancel ? TaskState::cancelled
                                                           : TaskState::none;
                }
            }
        };

        if (threads_ == 1 || prefixes.size() < 2) {
            work();
        } else {
            std::vector<std::thread> pool;
            const unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads_, prefixes.size()));
            for (unsigned k = 0; k < count; ++k) pool.emplace_back(work);
            for (auto& th : pool) th.join();
        }

        nodes = budget_.used.load();
        const std::size_t winner = best.load();
        for (std::size_t k = 0; k < std::min(winner, prefixes.size()); ++k) {
            if (state[k] != TaskState::none) {
                exhausted = true;
                return std::nullopt;
            }
        }
        if (winner < prefixes.size()) return solution[winner];
        return std::nullopt;
    }

private:
    enum class Abort { none, budget, cancel };

    struct Worker {
        std::vector<std::uint32_t> values;
        std::vector<typename P::Scratch> scratch;
        std::vector<std::uint32_t> cand;
    };

    Worker make_worker() const {
        Worker wk;
        wk.values.assign(std::max<std::size_t>(1, p_.positions() * p_.width()), 0);
        wk.scratch.resize(p_.positions() + 1);
        wk.cand.resize(p_.width());
        return wk;
    }

    void enumerate_prefixes(Worker& wk, std::size_t pos, std::size_t split,
                            std::vector<std::vector<std::uint32_t>>& out) {
        const unsigned w = p_.width();
        if (pos == split) {
            out.emplace_back(wk.values.begin(), wk.values.begin() + static_cast<std::ptrdiff_t>(split * w));
            return;
        }
        p_.prepare(pos, wk.values.data(), wk.scratch[pos]);
        for (std::size_t c = 0; c < p_.candidates(pos); ++c) {
            if (!budget_.spend()) return;
            p_.candidate_value(pos, c, wk.cand.data());
            if (!p_.consistent(pos, wk.cand.data(), wk.values.data(), wk.scratch[pos])) continue;
            std::copy(wk.cand.begin(), wk.cand.end(), wk.values.begin() + static_cast<std::ptrdiff_t>(pos * w));
            enumerate_prefixes(wk, pos + 1, split, out);
            if (budget_.exhausted) return;
        }
    }

    bool dfs(Worker& wk, std::size_t pos, std::size_t task, const std::atomic<std::size_t>& best, Abort& abort) {
        if (pos == p_.positions()) return true;
        const unsigned w = p_.width();
        p_.prepare(pos, wk.values.data(), wk.scratch[pos]);
        for (std::size_t c = 0; c < p_.candidates(pos); ++c) {
            if (!budget_.spend()) {
                abort = Abort::budget;
                return false;
            }
            if (best.load(std::memory_order_relaxed) < task) {
                abort = Abort::cancel;
                return false;
            }
            p_.candidate_value(pos, c, wk.cand.data());
            if (!p_.consistent(pos, wk.cand.data(), wk.values.data(), wk.scratch[pos])) continue;
            std::copy(wk.cand.begin(), wk.cand.end(), wk.values.begin() + static_cast<std::ptrdiff_t>(pos * w));
            if (dfs(wk, pos + 1, task, best, abort)) return true;
            if (abort != Abort::none) return false;
        }
        return false;
    }

    const P& p_;
    unsigned threads_;
    Budget budget_;
};

template <class P>
BadColouringResult run_problem(const Params& params, Nat R, std::uint64_t budget, unsigned width) {
    P problem(params, R);
    Engine<P> engine(problem, budget, width);
    BadColouringResult out;
    auto values = engine.run(out.exhausted, out.nodes);
    if (values) out.certificate = problem.make_certificate(*values, R);
    return out;
}

BadColouringResult find_bad_with_budget(const Params& p, Nat R, std::uint64_t budget, unsigned width) {
    if (p.d == 0) throw InvalidArgument("dimension must be >= 1");
    if (R + 1 < p.lo()) throw InvalidArgument("R below the domain's left end");
    switch (p.kind) {
        case Kind::AR: return run_problem<ArProblem>(p, R, budget, width);
        case Kind::PH: return run_problem<PhProblem>(p, R, budget, width);
        case Kind::KM: return run_problem<KmProblem>(p, R, budget, width);
    }
    throw InvalidArgument("unknown kind");
}

}  // namespace

BadColouringResult find_bad_colouring(const Params& p, Nat R, const SearchConfig& cfg) {
    return find_bad_with_budget(p, R, cfg.node_budget, cfg.parallel_width);
}

SearchOutcome ramsey_number(const Params& p, const SearchConfig& cfg) {
    SearchOutcome out;
    const Nat start = p.lo();
    std::uint64_t spent = 0;
    auto attempt = [&](Nat R) {
        const std::uint64_t left = cfg.node_budget > spent ? cfg.node_budget - spent : 0;
        BadColouringResult res = find_bad_with_budget(p, R, left, cfg.parallel_width);
        spent += std::min(res.nodes, left);
        return res;
    };
    if (start > 0) {
        BadColouringResult res = attempt(start - 1);
        if (res.exhausted) {
            out.status = SearchStatus::budget_exhausted;
            out.nodes_explored = spent;
            return out;
        }
        out.lower_certificate = std::move(res.certificate);
    }
    for (Nat R = start; R <= cfg.cap; ++R) {
        BadColouringResult res = attempt(R);
        if (res.exhausted) {
            out.status = SearchStatus::budget_exhausted;
            out.nodes_explored = spent;
            return out;
        }
        if (!res.certificate) {
            out.value = R;
            out.status = SearchStatus::exact;
            out.nodes_explored = spent;
            return out;
        }
        out.lower_certificate = std::move(res.certificate);
    }
    out.status = SearchStatus::cap_reached;
    out.nodes_explored = spent;
    return out;
}

SearchOutcome ar_number(unsigned d, Nat r, const ParamFunction& f, const SearchConfig& cfg) {
    return ramsey_number(Params{Kind::AR, d, r, 0, 0, f}, cfg);
}

SearchOutcome ph_number(unsigned d, Nat m, Nat r, const ParamFunction& f, const SearchConfig& cfg) {
    return ramsey_number(Params{Kind::PH, d, r, m, 0, f}, cfg);
}

SearchOutcome km_number(unsigned d, Nat a, Nat m, const ParamFunction& f, const SearchConfig& cfg) {
    return ramsey_number(Params{Kind::KM, d, 1, m, a, f}, cfg);
}

}  // namespace rtl
