#include "torus4/power_decoder.hpp"

#include <algorithm>
#include <stdexcept>

namespace torus4 {

namespace {

std::uint8_t pairing_bits(const F2Matrix& logicals, const BitVec& pattern) {
    std::uint8_t out = 0;
    for (std::size_t i = 0; i < logicals.rows; ++i)
        if (BitVec::dot(logicals.row[i], pattern)) out |= std::uint8_t(1u << i);
    return out;
}

PowerModel build_sector(const CssCode& code, const FaultDictionary* dict, int sector,
                        const LogicalBasis& basis, int table_depth, int k_max) {
    const F2Matrix& h = (sector == SECTOR_X) ? code.hz : code.hx;
    const F2Matrix& logicals = (sector == SECTOR_X) ? basis.lz : basis.lx;

    PowerModel md;
    md.sector = sector;
    md.checks = h.rows;
    md.n_data = code.n;
    md.k_max = k_max;
    md.table_depth = table_depth;

    std::vector<PowerEntry> cand;
    // Fresh data errors surfacing at a round boundary. These come first so
    // they win ties during dedup.
    for (std::size_t q = 0; q < code.n; ++q) {
        PowerEntry e;
        e.syn = BitVec(md.checks);
        for (std::size_t r = 0; r < h.rows; ++r)
            if (h.row[r].get(q)) e.syn.set(r);
        e.recovery = BitVec(code.n);
        e.recovery.set(q);
        e.carry = BitVec(md.checks);  // syn ^ H*e_q = 0
        e.logical = pairing_bits(logicals, e.recovery);
        e.cls = FaultClass::Qubit;
        e.src = UINT32_MAX;
        cand.push_back(std::move(e));
    }
    if (dict) {
        if (dict->slices != 2)
            throw std::invalid_argument("per-round model needs a one-noisy-round dictionary");
        for (std::size_t i = 0; i < dict->entries.size(); ++i) {
            const DictEntry& de = dict->entries[i];
            BitVec syn(md.checks);
            for (std::size_t b = 0; b < md.checks; ++b)
                if (de.det[sector].get(b)) syn.set(b);
            if (syn.is_zero()) continue;  // surfaces next round; boundary entries cover it
            PowerEntry e;
            e.syn = std::move(syn);
            e.recovery = (de.cls == FaultClass::Partial) ? BitVec(code.n) : de.residual[sector];
            e.carry = e.syn;
            e.carry ^= h.mul(e.recovery);
            e.logical = pairing_bits(logicals, e.recovery);
            e.cls = de.cls;
            e.src = std::uint32_t(i);
            cand.push_back(std::move(e));
        }
    }

    // One entry per distinct syndrome: best class, then lightest recovery,
    // then earliest.
    std::unordered_map<BitVec, std::uint32_t, BitVecHash> pick;
    for (std::uint32_t i = 0; i < cand.size(); ++i) {
        auto it = pick.find(cand[i].syn);
        if (it == pick.end()) {
            pick.emplace(cand[i].syn, i);
            continue;
        }
        const PowerEntry& a = cand[i];
        const PowerEntry& b = cand[it->second];
        int ra = int(a.cls), rb = int(b.cls);
        if (ra < rb || (ra == rb && a.recovery.popcount() < b.recovery.popcount()))
            it->second = i;
    }
    std::vector<std::uint32_t> keep;
    keep.reserve(pick.size());
    for (const auto& kv : pick) keep.push_back(kv.second);
    std::sort(keep.begin(), keep.end());
    md.S.reserve(keep.size());
    for (std::uint32_t i : keep) md.S.push_back(std::move(cand[i]));

    for (const PowerEntry& e : md.S) md.w_per = std::max(md.w_per, e.syn.popcount());

    // XOR combinations up to table_depth, smallest combination first.
    md.table.emplace(BitVec(md.checks), TableCombo{});
    if (table_depth >= 1)
        for (std::uint32_t i = 0; i < md.S.size(); ++i)
            md.table.emplace(md.S[i].syn, TableCombo{{i, 0, 0}, 1});
    if (table_depth >= 2) {
        for (std::uint32_t i = 0; i < md.S.size(); ++i)
            for (std::uint32_t j = i + 1; j < md.S.size(); ++j) {
                BitVec key = md.S[i].syn;
                key ^= md.S[j].syn;
                md.table.emplace(std::move(key), TableCombo{{i, j, 0}, 2});
            }
    }
    if (table_depth >= 3) {
        for (std::uint32_t i = 0; i < md.S.size(); ++i)
            for (std::uint32_t j = i + 1; j < md.S.size(); ++j) {
                BitVec ij = md.S[i].syn;
                ij ^= md.S[j].syn;
                for (std::uint32_t l = j + 1; l < md.S.size(); ++l) {
                    BitVec key = ij;
                    key ^= md.S[l].syn;
                    md.table.emplace(std::move(key), TableCombo{{i, j, l}, 3});
                }
            }
    }
    if (table_depth >= 4) throw std::invalid_argument("table depth above 3 not supported");
    for (const auto& kv : md.table) md.w_table = std::max(md.w_table, kv.first.popcount());
    return md;
}

}  // namespace

PowerModelPair build_power_model(const CssCode& code, const FaultDictionary& dict,
                                 const LogicalBasis& basis, int table_depth, int k_max) {
    PowerModelPair pair;
    pair.x = build_sector(code, &dict, SECTOR_X, basis, table_depth, k_max);
    pair.z = build_sector(code, &dict, SECTOR_Z, basis, table_depth, k_max);
    return pair;
}

PowerModelPair build_final_model(const CssCode& code, const LogicalBasis& basis,
                                 int table_depth, int k_max) {
    PowerModelPair pair;
    pair.x = build_sector(code, nullptr, SECTOR_X, basis, table_depth, k_max);
    pair.z = build_sector(code, nullptr, SECTOR_Z, basis, table_depth, k_max);
    return pair;
}

namespace {

struct Searcher {
    const PowerModel& md;
    BitVec cur;
    std::vector<std::uint32_t> stack;
    std::vector<std::uint32_t> best;
    std::size_t best_w;
    std::vector<std::uint32_t> found;
    bool ok = false;
    long nodes_left;

    explicit Searcher(const PowerModel& m, const BitVec& target, long budget)
        : md(m), cur(target), best_w(target.popcount()), nodes_left(budget) {}

    void note_best() {
        std::size_t w = cur.popcount();
        if (w < best_w) {
            best_w = w;
            best = stack;
        }
    }

    bool lookup() {
        if (cur.popcount() > md.w_table) return false;
        auto it = md.table.find(cur);
        if (it == md.table.end()) return false;
        found = stack;
        for (std::uint8_t i = 0; i < it->second.len; ++i) found.push_back(it->second.idx[i]);
        ok = true;
        return true;
    }

    // Chooses `remaining` more entries starting at `start`, keeping the
    // running weight within what the rest of the picks plus a table hit
    // could still cancel.
    void rec(std::size_t start, int remaining) {
        if (--nodes_left < 0) return;
        if (remaining == 0) {
            lookup();
            return;
        }
        long allow = long(remaining - 1) * long(md.w_per) + long(md.w_table);
        for (std::size_t i = start; i + remaining <= md.S.size(); ++i) {
            cur ^= md.S[i].syn;
            if (long(cur.popcount()) <= allow) {
                stack.push_back(std::uint32_t(i));
                note_best();
                rec(i + 1, remaining - 1);
                stack.pop_back();
            }
            cur ^= md.S[i].syn;
            if (ok || nodes_left < 0) return;
        }
    }
};

}  // namespace

PowerResult power_decode(const PowerModel& md, const BitVec& target) {
    if (target.n != md.checks) throw std::invalid_argument("target dimension mismatch");
    const long node_budget = 200000;

    Searcher s(md, target, node_budget);
    for (int k = 0; k <= md.k_max && !s.ok; ++k) {
        if (long(target.popcount()) > long(k) * long(md.w_per) + long(md.w_table)) continue;
        s.rec(0, k);
        if (s.nodes_left < 0) break;
    }

    PowerResult res;
    std::vector<std::uint32_t> sel;
    if (s.ok) {
        sel = std::move(s.found);
    } else {
        res.fallback = true;
        sel = std::move(s.best);
    }
    // Table indices may repeat chosen ones; duplicates cancel.
    std::sort(sel.begin(), sel.end());
    for (std::size_t i = 0; i < sel.size();) {
        if (i + 1 < sel.size() && sel[i] == sel[i + 1])
            i += 2;
        else
            res.chosen.push_back(sel[i]), ++i;
    }
    res.recovery = BitVec(md.n_data);
    res.carry = BitVec(md.checks);
    res.leftover = BitVec(md.checks);
    BitVec explained(md.checks);
    for (std::uint32_t i : res.chosen) {
        const PowerEntry& e = md.S[i];
        res.recovery ^= e.recovery;
        res.carry ^= e.carry;
        res.logical ^= e.logical;
        explained ^= e.syn;
    }
    if (res.fallback) {
        res.leftover = target;
        res.leftover ^= explained;
        res.carry ^= res.leftover;  // try again against the next round
    }
    return res;
}

}  // namespace torus4
