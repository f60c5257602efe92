#include "twisthom/chain.hpp"

#include <functional>
#include <sstream>

#include "twisthom/errors.hpp"

namespace thh {

int BettiTable::betti(int n, const Weight& w) const {
    auto it = entries.find({n, w});
    return it == entries.end() ? 0 : it->second.betti;
}

namespace {

bool all_nonneg(const std::vector<BasisElt>& basis) {
    for (const auto& b : basis)
        for (int c : b.wt)
            if (c < 0) return false;
    return true;
}

bool componentwise_le(const Weight& a, const Weight& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

} // namespace

ChainWindow::ChainWindow(AlgebraPtr A, BimodulePtr M, int n_max, const Window& wwin, bool normalized)
    : A_(std::move(A)), M_(std::move(M)), n_max_(n_max), wwin_(wwin), normalized_(normalized) {
    if (normalized_ && !A_->connected())
        throw ValidationError(
            "normalized chain window needs a weight-connected algebra (weight-zero part = k*1)");
    for (int i = 0; i < A_->dim(); ++i) {
        if (normalized_ && is_wzero(A_->wt(i))) continue;
        slot_basis_.push_back(i);
    }
    weights_ = enumerate_weights(wwin_);
    build_basis();
    build_boundaries();
}

void ChainWindow::build_basis() {
    bool prune = all_nonneg(A_->basis()) && all_nonneg(M_->basis());
    for (int n = 0; n <= n_max_; ++n) {
        std::map<Weight, std::vector<ChainTuple>> by_w;
        // depth-first over slots, module coefficient outermost
        for (int m = 0; m < M_->dim(); ++m) {
            ChainTuple t;
            t.m = m;
            t.slots.assign(static_cast<std::size_t>(n), 0);
            std::vector<Weight> partial(static_cast<std::size_t>(n) + 1);
            partial[0] = M_->wt(m);
            std::function<void(int)> rec = [&](int pos) {
                if (pos == n) {
                    if (wwin_.contains(partial[static_cast<std::size_t>(n)]))
                        by_w[partial[static_cast<std::size_t>(n)]].push_back(t);
                    return;
                }
                for (int a : slot_basis_) {
                    Weight nw = wadd(partial[static_cast<std::size_t>(pos)], A_->wt(a));
                    if (prune) {
                        bool feasible = false;
                        for (const Weight& target : weights_)
                            if (componentwise_le(nw, target)) { feasible = true; break; }
                        if (!feasible) continue;
                    }
                    partial[static_cast<std::size_t>(pos) + 1] = nw;
                    t.slots[static_cast<std::size_t>(pos)] = a;
                    rec(pos + 1);
                }
            };
            rec(0);
        }
        for (auto& [w, ts] : by_w) {
            auto& idx = index_[{n, w}];
            for (int k = 0; k < static_cast<int>(ts.size()); ++k) idx[ts[static_cast<std::size_t>(k)]] = k;
            basis_[{n, w}] = std::move(ts);
        }
    }
}

void ChainWindow::build_boundaries() {
    for (int n = 1; n <= n_max_; ++n) {
        for (const Weight& w : weights_) {
            const auto& ts = tuples(n, w);
            MatrixQ b(dim(n - 1, w), static_cast<int>(ts.size()));
            for (int col = 0; col < static_cast<int>(ts.size()); ++col) {
                const ChainTuple& t = ts[static_cast<std::size_t>(col)];
                SVec out;
                auto emit = [&](const ChainTuple& u, const Q& c) {
                    int row = index_of(n - 1, u);
                    if (row < 0)
                        throw Error("chain boundary left the enumerated basis at weight " + wstr(w));
                    svec_axpy(out, c, SVec{{row, Q(1)}});
                };
                // m <| a_1 (x) a_2 ... a_n
                for (const auto& [mm, c] : M_->right(t.m, t.slots[0])) {
                    ChainTuple u{mm, {t.slots.begin() + 1, t.slots.end()}};
                    emit(u, c);
                }
                // interior multiplications, signs alternate starting at -1
                for (int i = 1; i < n; ++i) {
                    Q sign = (i % 2 == 0) ? 1 : -1;
                    const SVec& prod =
                        A_->product(t.slots[static_cast<std::size_t>(i) - 1], t.slots[static_cast<std::size_t>(i)]);
                    for (const auto& [p, c] : prod) {
                        if (normalized_ && is_wzero(A_->wt(p)))
                            throw Error("normalized boundary produced a unit slot");
                        ChainTuple u{t.m, {}};
                        u.slots.reserve(static_cast<std::size_t>(n) - 1);
                        for (int j = 0; j < n; ++j) {
                            if (j == i - 1) {
                                u.slots.push_back(p);
                            } else if (j == i) {
                                continue;
                            } else {
                                u.slots.push_back(t.slots[static_cast<std::size_t>(j)]);
                            }
                        }
                        emit(u, sign * c);
                    }
                }
                // (-1)^n a_n |> m (x) a_1 ... a_{n-1}
                Q last_sign = (n % 2 == 0) ? 1 : -1;
                for (const auto& [mm, c] : M_->left(t.slots[static_cast<std::size_t>(n) - 1], t.m)) {
                    ChainTuple u{mm, {t.slots.begin(), t.slots.end() - 1}};
                    emit(u, last_sign * c);
                }
                b.set_col(col, out);
            }
            bnd_[{n, w}] = std::move(b);
        }
    }
    // b_0: the zero map out of C_0
    for (const Weight& w : weights_) bnd_[{0, w}] = MatrixQ(0, dim(0, w));
}

int ChainWindow::dim(int n, const Weight& w) const {
    auto it = basis_.find({n, w});
    return it == basis_.end() ? 0 : static_cast<int>(it->second.size());
}

const std::vector<ChainTuple>& ChainWindow::tuples(int n, const Weight& w) const {
    static const std::vector<ChainTuple> kEmpty;
    auto it = basis_.find({n, w});
    return it == basis_.end() ? kEmpty : it->second;
}

int ChainWindow::index_of(int n, const ChainTuple& t) const {
    Weight w = M_->wt(t.m);
    for (int a : t.slots) w = wadd(w, A_->wt(a));
    auto it = index_.find({n, w});
    if (it == index_.end()) return -1;
    auto jt = it->second.find(t);
    return jt == it->second.end() ? -1 : jt->second;
}

const MatrixQ& ChainWindow::boundary(int n, const Weight& w) const {
    auto it = bnd_.find({n, w});
    if (it == bnd_.end()) {
        static MatrixQ kZero;
        if (n < 0 || n > n_max_ || !wwin_.contains(w))
            throw BidegreeOutOfRange("boundary at (" + std::to_string(n) + ", " + wstr(w) +
                                     ") was not built");
        return kZero;
    }
    return it->second;
}

HomologyPresentation ChainWindow::homology(int n, const Weight& w) const {
    if (n < 0 || n >= n_max_ || !wwin_.contains(w))
        throw BidegreeOutOfRange("homology at (" + std::to_string(n) + ", " + wstr(w) +
                                 ") needs the boundary one degree higher");
    return homology_quotient(boundary(n, w), boundary(n + 1, w));
}

BettiTable ChainWindow::betti_table() const {
    BettiTable t;
    for (int n = 0; n < n_max_; ++n)
        for (const Weight& w : weights_) {
            HomologyPresentation h = homology(n, w);
            t.entries[{n, w}] = BettiEntry{h.betti, h.reps};
        }
    return t;
}

std::string ChainWindow::describe_chain(int n, const Weight& w, const SVec& v) const {
    if (v.empty()) return "0";
    const auto& ts = tuples(n, w);
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : v) {
        if (!first) os << " + ";
        os << rat_str(c) << "*";
        const ChainTuple& t = ts[static_cast<std::size_t>(i)];
        os << M_->elt(t.m).id;
        for (int a : t.slots) os << "(x)" << A_->elt(a).id;
        first = false;
    }
    return os.str();
}

ChainWindowPtr build_chain_window(AlgebraPtr A, BimodulePtr M, int n_max, const Window& wwin,
                                  bool normalized) {
    return std::make_shared<ChainWindow>(std::move(A), std::move(M), n_max, wwin, normalized);
}

std::vector<SVec> homology_reps(const ChainWindow& cw, int n, const Weight& w) {
    return cw.homology(n, w).reps;
}

} // namespace thh
