#include "twisthom/cochain.hpp"

#include <functional>

#include "twisthom/errors.hpp"

namespace thh {

CochainWindow::CochainWindow(AlgebraPtr A, BimodulePtr N, int n_max, const Window& input_window,
                             const Window& s_window)
    : A_(std::move(A)), N_(std::move(N)), n_max_(n_max), in_win_(input_window), s_win_(s_window) {
    svals_ = enumerate_weights(s_win_);
    in_weights_ = enumerate_weights(in_win_);
    build_tuples();
    build_basis();
    build_coboundaries();
}

void CochainWindow::build_tuples() {
    for (int n = 0; n <= n_max_ + 1; ++n) {
        std::map<Weight, std::vector<std::vector<int>>> by_w;
        std::vector<int> t(static_cast<std::size_t>(n));
        Weight zero = wzero(A_->grading_rank());
        std::function<void(int, const Weight&)> rec = [&](int pos, const Weight& sum) {
            if (pos == n) {
                if (in_win_.contains(sum)) by_w[sum].push_back(t);
                return;
            }
            for (int a = 0; a < A_->dim(); ++a) {
                t[static_cast<std::size_t>(pos)] = a;
                rec(pos + 1, wadd(sum, A_->wt(a)));
            }
        };
        rec(0, zero);
        for (auto& [w, ts] : by_w) {
            auto& idx = tuple_idx_[{n, w}];
            for (int k = 0; k < static_cast<int>(ts.size()); ++k) idx[ts[static_cast<std::size_t>(k)]] = k;
            tuples_[{n, w}] = std::move(ts);
        }
    }
}

void CochainWindow::build_basis() {
    for (int n = 0; n <= n_max_; ++n)
        for (const Weight& s : svals_) {
            std::vector<CBasisElt> b;
            for (const Weight& w : in_weights_) {
                auto it = tuples_.find({n, w});
                if (it == tuples_.end()) continue;
                const auto& nelts = N_->at_weight(wadd(w, s));
                for (int t = 0; t < static_cast<int>(it->second.size()); ++t)
                    for (int ne : nelts) b.push_back({w, t, ne});
            }
            auto& idx = index_[{n, s}];
            for (int k = 0; k < static_cast<int>(b.size()); ++k) idx[b[static_cast<std::size_t>(k)]] = k;
            basis_[{n, s}] = std::move(b);
        }
}

void CochainWindow::build_coboundaries() {
    for (int n = 0; n < n_max_; ++n)
        for (const Weight& s : svals_) {
            const auto& cb = cbasis(n, s);
            const auto& target = cbasis(n + 1, s);
            MatrixQ m(static_cast<int>(target.size()), static_cast<int>(cb.size()));
            // For each target input tuple u, each formula term reads the
            // cochain at a derived tuple; scatter contributions per column.
            for (const Weight& w : in_weights_) {
                auto it = tuples_.find({n + 1, w});
                if (it == tuples_.end()) continue;
                for (int ui = 0; ui < static_cast<int>(it->second.size()); ++ui) {
                    const std::vector<int>& u = it->second[static_cast<std::size_t>(ui)];
                    auto add = [&](const Weight& wg, const std::vector<int>& tg, int src_ne,
                                   const SVec& nval, const Q& c) {
                        auto tit = tuple_idx_.find({n, wg});
                        if (tit == tuple_idx_.end()) {
                            if (!in_win_.contains(wg))
                                throw WindowTooSmall("coboundary reads a cochain outside input window at weight " +
                                                     wstr(wg));
                            return;
                        }
                        auto pos = tit->second.find(tg);
                        if (pos == tit->second.end()) return;
                        int colk = cindex(n, s, {wg, pos->second, src_ne});
                        if (colk < 0) return; // source unit absent: N has no basis there
                        for (const auto& [tn, d] : nval) {
                            int row = cindex(n + 1, s, {w, ui, tn});
                            if (row < 0)
                                throw WindowTooSmall("coboundary output leaves the coefficient window at weight " +
                                                     wstr(wadd(w, s)));
                            Q cur = m.at(row, colk);
                            m.set(row, colk, cur + c * d);
                        }
                    };
                    // a_1 |> f(a_2 ... a_{n+1})
                    {
                        std::vector<int> rest(u.begin() + 1, u.end());
                        Weight wg = w;
                        for (int comp = 0; comp < static_cast<int>(wg.size()); ++comp)
                            wg[static_cast<std::size_t>(comp)] -= A_->wt(u[0])[static_cast<std::size_t>(comp)];
                        const auto& nelts = N_->at_weight(wadd(wg, s));
                        for (int ne : nelts) {
                            if (!N_->left_defined(u[0], ne))
                                throw WindowTooSmall("coefficient left action undefined for coboundary");
                            add(wg, rest, ne, N_->left(u[0], ne), 1);
                        }
                    }
                    // interior multiplications
                    for (int i = 1; i <= n; ++i) {
                        Q sign = (i % 2 == 0) ? 1 : -1;
                        const SVec& prod =
                            A_->product(u[static_cast<std::size_t>(i) - 1], u[static_cast<std::size_t>(i)]);
                        for (const auto& [p, c] : prod) {
                            std::vector<int> tg;
                            tg.reserve(static_cast<std::size_t>(n));
                            for (int j = 0; j <= n; ++j) {
                                if (j == i - 1)
                                    tg.push_back(p);
                                else if (j == i)
                                    continue;
                                else
                                    tg.push_back(u[static_cast<std::size_t>(j)]);
                            }
                            const auto& nelts = N_->at_weight(wadd(w, s));
                            for (int ne : nelts) add(w, tg, ne, SVec{{ne, Q(1)}}, sign * c);
                        }
                    }
                    // (-1)^{n+1} f(a_1 ... a_n) <| a_{n+1}
                    {
                        Q sign = (n % 2 == 0) ? -1 : 1;
                        std::vector<int> front(u.begin(), u.end() - 1);
                        Weight wg = w;
                        int last = u[static_cast<std::size_t>(n)];
                        for (int comp = 0; comp < static_cast<int>(wg.size()); ++comp)
                            wg[static_cast<std::size_t>(comp)] -= A_->wt(last)[static_cast<std::size_t>(comp)];
                        const auto& nelts = N_->at_weight(wadd(wg, s));
                        for (int ne : nelts) {
                            if (!N_->right_defined(ne, last))
                                throw WindowTooSmall("coefficient right action undefined for coboundary");
                            add(wg, front, ne, N_->right(ne, last), sign);
                        }
                    }
                }
            }
            cob_[{n, s}] = std::move(m);
        }
}

const std::vector<std::vector<int>>& CochainWindow::tuples(int n, const Weight& w) const {
    static const std::vector<std::vector<int>> kEmpty;
    auto it = tuples_.find({n, w});
    return it == tuples_.end() ? kEmpty : it->second;
}

int CochainWindow::tuple_index(int n, const std::vector<int>& t) const {
    Weight w = wzero(A_->grading_rank());
    for (int a : t) w = wadd(w, A_->wt(a));
    auto it = tuple_idx_.find({n, w});
    if (it == tuple_idx_.end()) return -1;
    auto jt = it->second.find(t);
    return jt == it->second.end() ? -1 : jt->second;
}

int CochainWindow::dim(int n, const Weight& s) const {
    auto it = basis_.find({n, s});
    return it == basis_.end() ? 0 : static_cast<int>(it->second.size());
}

const std::vector<CochainWindow::CBasisElt>& CochainWindow::cbasis(int n, const Weight& s) const {
    static const std::vector<CBasisElt> kEmpty;
    auto it = basis_.find({n, s});
    return it == basis_.end() ? kEmpty : it->second;
}

int CochainWindow::cindex(int n, const Weight& s, const CBasisElt& e) const {
    auto it = index_.find({n, s});
    if (it == index_.end()) return -1;
    auto jt = it->second.find(e);
    return jt == it->second.end() ? -1 : jt->second;
}

const MatrixQ& CochainWindow::coboundary(int n, const Weight& s) const {
    auto it = cob_.find({n, s});
    if (it == cob_.end())
        throw BidegreeOutOfRange("coboundary at (" + std::to_string(n) + ", " + wstr(s) +
                                 ") was not built");
    return it->second;
}

HomologyPresentation CochainWindow::cohomology(int n, const Weight& s) const {
    if (n < 0 || n >= n_max_)
        throw BidegreeOutOfRange("cohomology at degree " + std::to_string(n) + " not available");
    if (n == 0) return homology_quotient(coboundary(0, s), MatrixQ(dim(0, s), 0));
    return homology_quotient(coboundary(n, s), coboundary(n - 1, s));
}

BettiTable CochainWindow::betti_table() const {
    BettiTable t;
    for (int n = 0; n < n_max_; ++n)
        for (const Weight& s : svals_) {
            HomologyPresentation h = cohomology(n, s);
            t.entries[{n, s}] = BettiEntry{h.betti, h.reps};
        }
    return t;
}

SVec CochainWindow::evaluate(int n, const Weight& s, const SVec& f, const Weight& w,
                             const std::vector<int>& tuple) const {
    int ti = tuple_index(n, tuple);
    if (ti < 0) return {};
    SVec val;
    const auto& nelts = N_->at_weight(wadd(w, s));
    for (int ne : nelts) {
        int k = cindex(n, s, {w, ti, ne});
        if (k < 0) continue;
        auto it = f.find(k);
        if (it != f.end()) val.emplace(ne, it->second);
    }
    return val;
}

CochainWindowPtr build_cochain_window(AlgebraPtr A, BimodulePtr N, int n_max,
                                      const Window& input_window, const Window& s_window) {
    return std::make_shared<CochainWindow>(std::move(A), std::move(N), n_max, input_window, s_window);
}

} // namespace thh
