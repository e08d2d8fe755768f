#include "torus4/bposd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace torus4 {

void DemModel::set_p(double p) {
    if (p < 0 || p > 1) throw std::invalid_argument("error rate out of range");
    for (DemColumn& c : cols) {
        double keep = std::pow(1.0 - p, c.n_flip) * std::pow(1.0 - p / 15.0, c.n_depol);
        c.prior = 1.0 - keep;
    }
}

namespace {

struct ColKey {
    BitVec det;
    std::uint8_t logical;
    bool operator==(const ColKey& o) const { return logical == o.logical && det == o.det; }
};

struct ColKeyHash {
    std::size_t operator()(const ColKey& k) const {
        return k.det.hash() * 1099511628211ULL + k.logical;
    }
};

}  // namespace

DemModel build_dem(const FaultDictionary& dict, const NoisyCircuit& nc, int sector) {
    DemModel md;
    md.sector = sector;
    md.det_bits = dict.num_checks * std::size_t(dict.slices);

    std::unordered_map<ColKey, std::uint32_t, ColKeyHash> merge;
    std::vector<std::uint32_t> first_seen;
    for (const DictEntry& e : dict.entries) {
        if (e.det[sector].is_zero() && e.logical[sector] == 0) continue;
        ColKey key{e.det[sector], e.logical[sector]};
        auto it = merge.find(key);
        std::uint32_t col;
        if (it == merge.end()) {
            col = std::uint32_t(md.cols.size());
            merge.emplace(std::move(key), col);
            DemColumn c;
            c.det = e.det[sector];
            c.logical = e.logical[sector];
            md.cols.push_back(std::move(c));
            first_seen.push_back(std::uint32_t(&e - dict.entries.data()));
        } else {
            col = it->second;
        }
        if (nc.sites.at(e.fault.site).kind == SiteKind::Depol2)
            md.cols[col].n_depol += 1;
        else
            md.cols[col].n_flip += 1;
    }
    // deterministic column order regardless of hash iteration
    std::vector<std::uint32_t> order(md.cols.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return first_seen[a] < first_seen[b]; });
    std::vector<DemColumn> sorted;
    sorted.reserve(md.cols.size());
    for (std::uint32_t i : order) sorted.push_back(std::move(md.cols[i]));
    md.cols = std::move(sorted);

    md.row_cols.assign(md.det_bits, {});
    for (std::uint32_t j = 0; j < md.cols.size(); ++j)
        for (std::size_t b : md.cols[j].det.ones()) md.row_cols[b].push_back(j);
    md.set_p(nc.model.p);
    return md;
}

BposdDecoder::BposdDecoder(const DemModel& model, BposdConfig cfg) : md_(&model), cfg_(cfg) {
    const std::size_t nc = md_->cols.size(), nr = md_->det_bits;
    llr0_.resize(nc);
    for (std::size_t j = 0; j < nc; ++j) {
        double p = std::min(std::max(md_->cols[j].prior, 1e-12), 0.5 - 1e-9);
        llr0_[j] = std::log((1.0 - p) / p);
    }
    col_off_.assign(nc + 1, 0);
    for (std::size_t j = 0; j < nc; ++j)
        col_off_[j + 1] = col_off_[j] + std::uint32_t(md_->cols[j].det.popcount());
    col_row_.resize(col_off_[nc]);
    edge_col_.resize(col_off_[nc]);
    {
        std::size_t e = 0;
        for (std::size_t j = 0; j < nc; ++j)
            for (std::size_t b : md_->cols[j].det.ones()) {
                col_row_[e] = std::uint32_t(b);
                edge_col_[e] = std::uint32_t(j);
                ++e;
            }
    }
    row_off_.assign(nr + 1, 0);
    for (std::size_t e = 0; e < col_row_.size(); ++e) row_off_[col_row_[e] + 1] += 1;
    for (std::size_t r = 0; r < nr; ++r) row_off_[r + 1] += row_off_[r];
    row_edge_.resize(col_row_.size());
    {
        std::vector<std::uint32_t> fill(row_off_.begin(), row_off_.end() - 1);
        for (std::uint32_t e = 0; e < col_row_.size(); ++e) row_edge_[fill[col_row_[e]]++] = e;
    }
    msg_cv_.resize(col_row_.size());
    msg_vc_.resize(col_row_.size());
    posterior_.resize(nc);
    sel_.resize(nc);
    order_.resize(nc);
    piv_at_row_.assign(nr, -1);

    Echelon ech(nr);
    for (std::size_t j = 0; j < nc; ++j) ech.add(md_->cols[j].det);
    rank_ = ech.rank();
}

BposdResult BposdDecoder::decode(const BitVec& syndrome) {
    if (syndrome.n != md_->det_bits) throw std::invalid_argument("syndrome dimension mismatch");
    const std::size_t nc = md_->cols.size(), nr = md_->det_bits;
    BposdResult out;

    for (std::size_t j = 0; j < nc; ++j)
        for (std::uint32_t e = col_off_[j]; e < col_off_[j + 1]; ++e) msg_cv_[e] = llr0_[j];

    auto hard_decision = [&]() {
        for (std::size_t j = 0; j < nc; ++j) sel_[j] = posterior_[j] < 0;
    };
    auto syndrome_matches = [&]() {
        for (std::size_t r = 0; r < nr; ++r) {
            int par = 0;
            for (std::uint32_t k = row_off_[r]; k < row_off_[r + 1]; ++k)
                par ^= sel_[edge_col_[row_edge_[k]]];
            if ((par != 0) != syndrome.get(r)) return false;
        }
        return true;
    };

    for (int it = 0; it < cfg_.iters; ++it) {
        // check-node pass: two-smallest-magnitudes trick per detector
        for (std::size_t r = 0; r < nr; ++r) {
            double min1 = 1e300, min2 = 1e300;
            std::uint32_t arg1 = UINT32_MAX;
            int sign_all = syndrome.get(r) ? 1 : 0;
            for (std::uint32_t k = row_off_[r]; k < row_off_[r + 1]; ++k) {
                double m = msg_cv_[row_edge_[k]];
                if (m < 0) sign_all ^= 1;
                double a = std::fabs(m);
                if (a < min1) {
                    min2 = min1;
                    min1 = a;
                    arg1 = row_edge_[k];
                } else if (a < min2) {
                    min2 = a;
                }
            }
            for (std::uint32_t k = row_off_[r]; k < row_off_[r + 1]; ++k) {
                std::uint32_t e = row_edge_[k];
                double m = msg_cv_[e];
                int sgn = sign_all ^ (m < 0 ? 1 : 0);
                double mag = (e == arg1) ? min2 : min1;
                msg_vc_[e] = (sgn ? -1.0 : 1.0) * cfg_.scale * mag;
            }
        }
        // variable-node pass
        for (std::size_t j = 0; j < nc; ++j) {
            double sum = llr0_[j];
            for (std::uint32_t e = col_off_[j]; e < col_off_[j + 1]; ++e) sum += msg_vc_[e];
            posterior_[j] = sum;
            for (std::uint32_t e = col_off_[j]; e < col_off_[j + 1]; ++e)
                msg_cv_[e] = sum - msg_vc_[e];
        }
        hard_decision();
        if (syndrome_matches()) {
            out.converged = true;
            break;
        }
    }
    auto cost = [&]() {
        double c = 0;
        for (std::size_t j = 0; j < nc; ++j)
            if (sel_[j]) c += llr0_[j];
        return c;
    };
    if (!out.converged) {
        osd(syndrome);
    } else if (!syndrome.is_zero()) {
        // BP can settle on a consistent but unlikely explanation; keep its
        // answer only when it beats the ordered-statistics one.
        double bp_cost = cost();
        sel_bp_ = sel_;
        osd(syndrome);
        if (bp_cost <= cost()) sel_ = sel_bp_;
    }
    for (std::size_t j = 0; j < nc; ++j)
        if (sel_[j]) {
            out.logical ^= md_->cols[j].logical;
            out.weight += 1;
        }
    return out;
}

// Order-0 ordered statistics: walk columns from most likely to least, keep
// the ones that grow a basis of the detector space, solve exactly for the
// syndrome inside that basis.
void BposdDecoder::osd(const BitVec& syndrome) {
    const std::size_t nc = md_->cols.size();
    for (std::uint32_t j = 0; j < nc; ++j) order_[j] = j;
    std::stable_sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
        return posterior_[a] < posterior_[b];
    });

    std::fill(piv_at_row_.begin(), piv_at_row_.end(), -1);
    piv_vec_.clear();
    piv_combo_.clear();
    sel_ids_.clear();

    BitVec v, u;
    for (std::uint32_t oj : order_) {
        if (sel_ids_.size() == rank_) break;
        v = md_->cols[oj].det;
        u = BitVec(rank_);
        while (true) {
            std::size_t r = v.lowest();
            if (r == v.n) break;
            std::int32_t pi = piv_at_row_[r];
            if (pi < 0) break;
            v ^= piv_vec_[pi];
            u ^= piv_combo_[pi];
        }
        std::size_t r = v.lowest();
        if (r == v.n) continue;  // dependent on better columns
        u.set(sel_ids_.size());
        sel_ids_.push_back(oj);
        piv_at_row_[r] = std::int32_t(piv_vec_.size());
        piv_vec_.push_back(std::move(v));
        piv_combo_.push_back(std::move(u));
    }

    v = syndrome;
    u = BitVec(rank_);
    while (true) {
        std::size_t r = v.lowest();
        if (r == v.n) break;
        std::int32_t pi = piv_at_row_[r];
        if (pi < 0) throw std::runtime_error("syndrome outside decoder model");
        v ^= piv_vec_[pi];
        u ^= piv_combo_[pi];
    }
    std::fill(sel_.begin(), sel_.end(), 0);
    for (std::size_t k = 0; k < sel_ids_.size(); ++k)
        if (u.get(k)) sel_[sel_ids_[k]] = 1;
}

}  // namespace torus4
