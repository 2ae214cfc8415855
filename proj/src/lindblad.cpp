#include "cavitysim/lindblad.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace cavitysim {

Operator build_static_hamiltonian(const SystemParams& params, const SpacePtr& space) {
    const int n = space->total_dim();
    Eigen::VectorXcd diag = Eigen::VectorXcd::Zero(n);

    struct Mode {
        const char* label;
        double kerr;
    };
    const Mode modes[] = {{kCavity, params.kerr_c},
                          {kTransmon, params.kerr_q},
                          {kReadout, params.kerr_r}};

    auto level = [&](int basis, const char* label) {
        return space->level_of(basis, space->index_of(label));
    };

    for (int i = 0; i < n; ++i) {
        double e = 0.0;
        for (const Mode& m : modes) {
            if (!space->has(m.label)) continue;
            const double nk = level(i, m.label);
            e -= 0.5 * m.kerr * nk * (nk - 1.0); // <n|x^dag^2 x^2|n> = n(n-1)
        }
        if (space->has(kCavity) && space->has(kTransmon))
            e -= params.chi * level(i, kCavity) * level(i, kTransmon);
        if (space->has(kReadout) && space->has(kTransmon))
            e -= params.chi_qr * level(i, kReadout) * level(i, kTransmon);
        if (space->has(kReadout) && space->has(kCavity))
            e -= params.chi_cr * level(i, kReadout) * level(i, kCavity);
        diag(i) = e;
    }

    SparseCxd h(n, n);
    h.reserve(Eigen::VectorXi::Constant(n, 1));
    for (int i = 0; i < n; ++i) h.insert(i, i) = diag(i);
    h.makeCompressed();
    return Operator{space, std::move(h), true};
}

std::vector<CollapseChannel> collapse_channels(const SystemParams& params,
                                               const SpacePtr& space) {
    std::vector<CollapseChannel> channels;
    if (space->has(kCavity)) {
        channels.push_back({annihilation(space, kCavity),
                            (1.0 + params.nth_c) / params.t1_c});
        if (params.nth_c > 0.0)
            channels.push_back({creation(space, kCavity), params.nth_c / params.t1_c});
    }
    if (space->has(kTransmon)) {
        channels.push_back({annihilation(space, kTransmon),
                            (1.0 + params.nth_q) / params.t1_q});
        if (params.nth_q > 0.0)
            channels.push_back({creation(space, kTransmon), params.nth_q / params.t1_q});
        const double gamma_phi = params.transmon_dephasing_rate();
        if (gamma_phi > 0.0)
            channels.push_back({number_operator(space, kTransmon), gamma_phi});
    }
    if (space->has(kReadout))
        channels.push_back({annihilation(space, kReadout), 1.0 / params.t1_r});
    return channels;
}

std::vector<CollapseChannel> sideband_collapse_channels(const SystemParams& params,
                                                        const SpacePtr& space) {
    std::vector<CollapseChannel> channels;
    if (space->has(kCavity)) {
        channels.push_back({annihilation(space, kCavity),
                            (1.0 + params.nth_c) / params.t1_c});
        if (params.nth_c > 0.0)
            channels.push_back({creation(space, kCavity), params.nth_c / params.t1_c});
    }
    if (space->has(kTransmon)) {
        channels.push_back({annihilation(space, kTransmon),
                            (1.0 + params.nth_q) / params.t1_q});
        if (params.nth_q > 0.0)
            channels.push_back({creation(space, kTransmon), params.nth_q / params.t1_q});
        const double gamma_phi = params.transmon_gf_dephasing_rate();
        if (gamma_phi > 0.0)
            channels.push_back({number_operator(space, kTransmon), gamma_phi});
    }
    if (space->has(kReadout))
        channels.push_back({annihilation(space, kReadout), 1.0 / params.t1_r});
    return channels;
}

SparseCxd build_liouvillian(const Operator& hamiltonian,
                            const std::vector<CollapseChannel>& channels) {
    const int n = hamiltonian.dim();
    SparseCxd id(n, n);
    id.setIdentity();

    const SparseCxd& h = hamiltonian.mat;
    const cxd mi{0.0, -1.0};
    SparseCxd liouv =
        mi * (Eigen::kroneckerProduct(id, h).eval() -
              Eigen::kroneckerProduct(SparseCxd(h.transpose()), id).eval());

    for (const CollapseChannel& ch : channels) {
        if (ch.rate < 0.0)
            throw validation_error("build_liouvillian: negative collapse rate");
        if (ch.rate == 0.0) continue;
        const SparseCxd& l = ch.op.mat;
        SparseCxd lconj = l.conjugate();
        SparseCxd ldl = SparseCxd(l.adjoint()) * l;
        liouv = liouv + SparseCxd(ch.rate * Eigen::kroneckerProduct(lconj, l).eval());
        liouv = liouv -
                SparseCxd(0.5 * ch.rate * Eigen::kroneckerProduct(id, ldl).eval());
        liouv = liouv - SparseCxd(0.5 * ch.rate *
                                  Eigen::kroneckerProduct(SparseCxd(ldl.transpose()), id)
                                      .eval());
    }
    liouv.makeCompressed();
    return liouv;
}

} // namespace cavitysim
