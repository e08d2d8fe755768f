#include "torus4/noise.hpp"

#include <stdexcept>

namespace torus4 {

NoisyCircuit insert_noise(const Circuit& c, const NoiseModel& model) {
    if (model.p < 0.0 || model.p > 1.0)
        throw std::invalid_argument("insert_noise: probability out of range");
    NoisyCircuit nc;
    nc.circuit = c;
    nc.model = model;
    std::int32_t meas_i = 0;
    for (std::size_t li = 0; li < c.layers.size(); ++li) {
        const Layer& layer = c.layers[li];
        for (std::size_t oi = 0; oi < layer.ops.size(); ++oi) {
            const Op& op = layer.ops[oi];
            bool is_meas = op.kind == OpKind::MeasX || op.kind == OpKind::MeasZ;
            if (layer.noiseless) {
                if (is_meas) ++meas_i;
                continue;
            }
            switch (op.kind) {
                case OpKind::PrepX:
                case OpKind::PrepZ:
                    if (model.after_prep)
                        nc.sites.push_back({SiteKind::PrepFlip, static_cast<std::int32_t>(li),
                                            static_cast<std::int32_t>(oi), op.q0, -1, -1});
                    break;
                case OpKind::CX:
                    if (model.after_2q)
                        nc.sites.push_back({SiteKind::Depol2, static_cast<std::int32_t>(li),
                                            static_cast<std::int32_t>(oi), op.q0, op.q1, -1});
                    break;
                case OpKind::MeasX:
                case OpKind::MeasZ:
                    if (model.before_meas)
                        nc.sites.push_back({SiteKind::MeasFlip, static_cast<std::int32_t>(li),
                                            static_cast<std::int32_t>(oi), op.q0, -1, meas_i});
                    ++meas_i;
                    break;
            }
        }
    }
    if (meas_i != static_cast<std::int32_t>(c.meas.size()))
        throw std::logic_error("insert_noise: measurement count out of sync");
    return nc;
}

}  // namespace torus4
