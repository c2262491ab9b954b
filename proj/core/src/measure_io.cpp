#include "roughheat/measure_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "roughheat/errors.hpp"

namespace roughheat {

using nlohmann::json;

InitialMeasure measure_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("components") || !doc["components"].is_array())
        throw config_error("measure spec: expected {\"components\": [...]}");
    InitialMeasure mu;
    for (const auto& c : doc["components"]) {
        const std::string kind = c.value("kind", "");
        if (kind == "lebesgue") {
            mu.add(LebesgueComponent{c.value("scale", 1.0)});
        } else if (kind == "atom") {
            mu.add(AtomComponent{c.value("location", 0.0), c.value("mass", 1.0)});
        } else if (kind == "exp") {
            if (!c.contains("rate")) throw config_error("measure spec: exp component needs rate");
            mu.add(ExpDensityComponent{c["rate"].get<double>()});
        } else if (kind == "grid") {
            if (c.contains("csv")) {
                mu.add(grid_from_csv(c["csv"].get<std::string>()));
            } else {
                GridDensityComponent g;
                g.x = c.value("x", std::vector<double>{});
                g.density = c.value("density", std::vector<double>{});
                mu.add(std::move(g));
            }
        } else {
            throw config_error("measure spec: unknown component kind '" + kind + "'");
        }
    }
    mu.validate();
    return mu;
}

json measure_to_json(const InitialMeasure& mu) {
    json comps = json::array();
    for (const auto& c : mu.components()) {
        if (const auto* l = std::get_if<LebesgueComponent>(&c)) {
            comps.push_back({{"kind", "lebesgue"}, {"scale", l->scale}});
        } else if (const auto* a = std::get_if<AtomComponent>(&c)) {
            comps.push_back({{"kind", "atom"}, {"location", a->location}, {"mass", a->mass}});
        } else if (const auto* e = std::get_if<ExpDensityComponent>(&c)) {
            comps.push_back({{"kind", "exp"}, {"rate", e->rate}});
        } else if (const auto* g = std::get_if<GridDensityComponent>(&c)) {
            comps.push_back({{"kind", "grid"}, {"x", g->x}, {"density", g->density}});
        }
    }
    return json{{"components", comps}};
}

GridDensityComponent grid_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("grid csv: cannot open " + path);
    GridDensityComponent g;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double x, v;
        if (!(row >> x >> v)) {
            if (g.x.empty()) continue;  // header line
            throw config_error("grid csv: malformed row '" + line + "'");
        }
        g.x.push_back(x);
        g.density.push_back(v);
    }
    if (g.x.size() < 2) throw config_error("grid csv: need at least two samples");
    return g;
}

InitialMeasure measure_from_shorthand(const std::string& spec) {
    InitialMeasure mu;
    std::istringstream parts(spec);
    std::string item;
    while (std::getline(parts, item, ';')) {
        if (item.empty()) continue;
        std::vector<std::string> f;
        std::istringstream fields(item);
        std::string tok;
        while (std::getline(fields, tok, ':')) f.push_back(tok);
        const auto num = [&](size_t i, double dflt) {
            return f.size() > i && !f[i].empty() ? std::stod(f[i]) : dflt;
        };
        if (f[0] == "lebesgue") {
            mu.add(LebesgueComponent{num(1, 1.0)});
        } else if (f[0] == "delta") {
            mu.add(AtomComponent{0.0, 1.0});
        } else if (f[0] == "atom") {
            if (f.size() < 3) throw config_error("measure shorthand: atom:<loc>:<mass>");
            mu.add(AtomComponent{num(1, 0.0), num(2, 1.0)});
        } else if (f[0] == "exp") {
            if (f.size() < 2) throw config_error("measure shorthand: exp:<rate>");
            mu.add(ExpDensityComponent{num(1, -1.0)});
        } else if (f[0] == "exp-decay") {
            if (f.size() < 2) throw config_error("measure shorthand: exp-decay:<beta>");
            mu.add(ExpDensityComponent{-num(1, 1.0)});
        } else if (f[0] == "grid") {
            if (f.size() < 2) throw config_error("measure shorthand: grid:<csv path>");
            mu.add(grid_from_csv(item.substr(5)));
        } else {
            throw config_error("measure shorthand: unknown kind '" + f[0] + "'");
        }
    }
    if (mu.empty()) throw config_error("measure shorthand: empty spec");
    mu.validate();
    return mu;
}

}  // namespace roughheat
