#include "cavitysim/config.hpp"

#include <fstream>
#include <sstream>

#include "cavitysim/errors.hpp"

namespace cavitysim {

namespace {

using Json = nlohmann::ordered_json;

const Json* walk(const Json& block, const std::string& path) {
    const Json* node = &block;
    std::stringstream parts(path);
    std::string key;
    while (std::getline(parts, key, '.')) {
        if (!node->is_object() || !node->contains(key)) return nullptr;
        node = &(*node)[key];
    }
    return node;
}

} // namespace

double require_number(const Json& block, const std::string& path) {
    const Json* node = walk(block, path);
    if (!node) throw validation_error("config: missing field " + path);
    if (!node->is_number())
        throw validation_error("config: field " + path + " must be a number");
    return node->get<double>();
}

double number_or(const Json& block, const std::string& path, double fallback) {
    const Json* node = walk(block, path);
    if (!node) return fallback;
    if (!node->is_number())
        throw validation_error("config: field " + path + " must be a number");
    return node->get<double>();
}

SystemParams device_from_json(const Json& block) {
    SystemParams ref = SystemParams::reference();
    SystemParams p;
    p.omega_c = two_pi * number_or(block, "omega_c_over_2pi_hz", ref.omega_c / two_pi);
    p.omega_q = two_pi * number_or(block, "omega_q_over_2pi_hz", ref.omega_q / two_pi);
    p.omega_r = two_pi * number_or(block, "omega_r_over_2pi_hz", ref.omega_r / two_pi);
    p.kerr_c = two_pi * number_or(block, "kerr_c_over_2pi_hz", ref.kerr_c / two_pi);
    p.kerr_q = two_pi * number_or(block, "kerr_q_over_2pi_hz", ref.kerr_q / two_pi);
    p.kerr_r = two_pi * number_or(block, "kerr_r_over_2pi_hz", ref.kerr_r / two_pi);
    p.chi = two_pi * number_or(block, "chi_over_2pi_hz", ref.chi / two_pi);
    p.chi_qr = two_pi * number_or(block, "chi_qr_over_2pi_hz", ref.chi_qr / two_pi);
    p.chi_cr = two_pi * number_or(block, "chi_cr_over_2pi_hz", ref.chi_cr / two_pi);
    p.t1_c = number_or(block, "t1_c_s", ref.t1_c);
    p.t2_c = number_or(block, "t2_c_s", ref.t2_c);
    p.t1_q = number_or(block, "t1_q_s", ref.t1_q);
    p.t2_q = number_or(block, "t2_q_s", ref.t2_q);
    p.t2e_q = number_or(block, "t2e_q_s", ref.t2e_q);
    p.t2_gf_q = number_or(block, "t2_gf_q_s", ref.t2_gf_q);
    p.t1_f_q = number_or(block, "t1_f_q_s", ref.t1_f_q);
    p.t1_r = number_or(block, "t1_r_s", ref.t1_r);
    p.nth_c = number_or(block, "nth_c", ref.nth_c);
    p.nth_q = number_or(block, "nth_q", ref.nth_q);
    p.validate();
    return p;
}

CavityGeometry geometry_from_json(const Json& block) {
    CavityGeometry ref = CavityGeometry::reference();
    CavityGeometry g;
    g.omega_c = two_pi * number_or(block, "omega_c_over_2pi_hz", ref.omega_c / two_pi);
    g.filling_factor = number_or(block, "filling_factor", ref.filling_factor);
    g.geometry_factor = number_or(block, "geometry_factor_ohm", ref.geometry_factor);
    g.seam_admittance =
        number_or(block, "seam_admittance_per_ohm_m", ref.seam_admittance);
    g.bulk_participation =
        number_or(block, "bulk_participation", ref.bulk_participation);
    g.p_ma = number_or(block, "p_ma", ref.p_ma);
    g.p_ms = number_or(block, "p_ms", ref.p_ms);
    g.p_sa = number_or(block, "p_sa", ref.p_sa);
    g.external_coupling =
        two_pi * number_or(block, "external_kappa_over_2pi_hz",
                           ref.external_coupling / two_pi);
    g.validate();
    return g;
}

MaterialParams material_from_json(const Json& block) {
    MaterialParams ref = MaterialParams::reference();
    MaterialParams m;
    m.tan_delta_oxide = number_or(block, "tan_delta_oxide", ref.tan_delta_oxide);
    m.tan_delta_bulk = number_or(block, "tan_delta_bulk", ref.tan_delta_bulk);
    m.tan_delta_ma = number_or(block, "tan_delta_ma", ref.tan_delta_ma);
    m.tan_delta_ms = number_or(block, "tan_delta_ms", ref.tan_delta_ms);
    m.tan_delta_sa = number_or(block, "tan_delta_sa", ref.tan_delta_sa);
    m.seam_conductance =
        number_or(block, "seam_conductance_per_ohm_m", ref.seam_conductance);
    m.surface_resistance_per_mg =
        number_or(block, "surface_resistance_per_mg_ohm", ref.surface_resistance_per_mg);
    m.ambient_field_mg = number_or(block, "ambient_field_mg", ref.ambient_field_mg);
    if (block.contains("shield_attenuations")) {
        m.shield_attenuations.clear();
        for (const auto& a : block["shield_attenuations"]) {
            if (!a.is_number())
                throw validation_error(
                    "config: material.shield_attenuations must be numbers");
            m.shield_attenuations.push_back(a.get<double>());
        }
    } else {
        m.shield_attenuations = ref.shield_attenuations;
    }
    m.residual_resistance_bound = number_or(block, "residual_resistance_bound_ohm",
                                            ref.residual_resistance_bound);
    m.temperature = number_or(block, "temperature_k", ref.temperature);
    m.validate();
    return m;
}

RunConfig parse_config(const std::string& text) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const std::exception& ex) {
        throw config_error(std::string("config: JSON parse failure: ") + ex.what());
    }
    if (!root.is_object()) throw validation_error("config: root must be an object");

    RunConfig cfg;
    cfg.canonical_text = text;
    cfg.device = device_from_json(root.contains("device") ? root["device"]
                                                          : Json::object());
    cfg.geometry = geometry_from_json(root.contains("geometry") ? root["geometry"]
                                                                : Json::object());
    cfg.material = material_from_json(root.contains("material") ? root["material"]
                                                                : Json::object());
    if (!root.contains("experiment"))
        throw validation_error("config: missing field experiment");
    cfg.experiment = root["experiment"];
    if (!cfg.experiment.is_object() || !cfg.experiment.contains("name") ||
        !cfg.experiment["name"].is_string())
        throw validation_error("config: missing field experiment.name");

    if (root.contains("output")) {
        const Json& out = root["output"];
        if (out.contains("dir")) {
            if (!out["dir"].is_string())
                throw validation_error("config: field output.dir must be a string");
            cfg.output_dir = out["dir"].get<std::string>();
        }
    }
    cfg.seed = static_cast<std::uint64_t>(number_or(root, "seed", 0.0));
    cfg.threads = static_cast<int>(number_or(root, "threads", 1.0));
    cfg.tolerance_scale = number_or(root, "tolerance_scale", 1.0);
    if (cfg.tolerance_scale <= 0.0)
        throw validation_error("config: field tolerance_scale must be > 0");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace cavitysim
