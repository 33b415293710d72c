#include "heis/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace heis {

using nlohmann::json;

Polytope polytope_from_json(const std::string& text) {
    json j = json::parse(text);
    if (!j.contains("halfspaces") || !j["halfspaces"].is_array())
        throw std::invalid_argument("polytope json: missing \"halfspaces\" array");
    std::vector<Halfspace> hs;
    for (const auto& item : j["halfspaces"]) {
        const auto& n = item.at("n");
        if (!n.is_array() || n.size() != 3)
            throw std::invalid_argument("polytope json: \"n\" must be a 3-array");
        Plane p{n[0].get<double>(), n[1].get<double>(), n[2].get<double>(),
                item.at("c").get<double>()};
        hs.push_back({p});
    }
    return Polytope(std::move(hs));
}

Polytope read_polytope(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return polytope_from_json(ss.str());
}

std::string polytope_to_json(const Polytope& P) {
    json j;
    j["halfspaces"] = json::array();
    for (const auto& h : P.halfspaces()) {
        j["halfspaces"].push_back(
            {{"n", {h.plane.n1, h.plane.n2, h.plane.n3}}, {"c", h.plane.c}});
    }
    return j.dump(2);
}

void write_polytope(const Polytope& P, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
    out << polytope_to_json(P) << "\n";
}

} // namespace heis
