#include "anneal/spec_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "anneal/errors.hpp"

namespace anneal {

namespace {

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ParseError("spec key '" + key + "': bad number '" + value + "'");
    }
}

// splits "name[3]" into ("name", 3); index -1 when there is no bracket
std::pair<std::string, int> split_indexed(const std::string& key) {
    auto lb = key.find('[');
    if (lb == std::string::npos) return {key, -1};
    if (key.back() != ']') throw ParseError("spec key '" + key + "': missing ']'");
    std::string name = key.substr(0, lb);
    std::string idx = key.substr(lb + 1, key.size() - lb - 2);
    int i = -1;
    auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), i);
    if (ec != std::errc() || ptr != idx.data() + idx.size() || i < 0)
        throw ParseError("spec key '" + key + "': bad index");
    return {name, i};
}

}  // namespace

ModelSpec parse_model_spec_text(const std::string& text) {
    ModelSpec spec;
    bool kind_set = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("spec line " + std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        while (!value.empty() && (value.front() == ' ' || value.front() == '\t')) value.erase(0, 1);

        if (key == "model") {
            kind_set = true;
            if (value == "two_spin")
                spec.kind = ModelSpec::Kind::two_spin;
            else if (value == "matchings")
                spec.kind = ModelSpec::Kind::matchings;
            else if (value == "ising")
                spec.kind = ModelSpec::Kind::ising;
            else if (value == "random_cluster")
                spec.kind = ModelSpec::Kind::random_cluster;
            else
                throw ParseError("unknown model kind: " + value);
            continue;
        }
        auto [name, idx] = split_indexed(key);
        double v = parse_double(key, value);
        if (name == "gamma1" && idx < 0)
            spec.two_spin.gamma1 = v;
        else if (name == "gamma2" && idx < 0)
            spec.two_spin.gamma2 = v;
        else if (name == "flipped" && idx < 0)
            spec.flipped = v != 0.0;
        else if (name == "slack" && idx < 0)
            spec.ising_slack = v;
        else if (name == "lambda" && idx < 0) {
            spec.two_spin.lambda = v;
            spec.matching_lambda = v;
            spec.default_vertex_lambda = v;
        } else if (name == "gamma" && idx < 0)
            spec.default_edge_gamma = v;
        else if (name == "p" && idx < 0)
            spec.default_edge_p = v;
        else if ((name == "gamma" || name == "p") && idx >= 0)
            spec.edge_overrides.emplace_back(idx, v);
        else if (name == "lambda" && idx >= 0)
            spec.vertex_overrides.emplace_back(idx, v);
        else
            throw ParseError("unknown spec key: " + key);
    }
    if (!kind_set) throw ParseError("spec file is missing the 'model=' key");
    return spec;
}

ModelSpec parse_model_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open spec file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model_spec_text(ss.str());
}

IsingSpec ModelSpec::to_ising(const Graph& g) const {
    IsingSpec ising;
    ising.slack = ising_slack;
    ising.edge_gamma.assign(g.num_edges(), default_edge_gamma);
    ising.vertex_lambda.assign(g.num_vertices(), default_vertex_lambda);
    for (auto [i, v] : edge_overrides) {
        if (i >= g.num_edges()) throw InvalidParameter("edge override index out of range");
        ising.edge_gamma[i] = v;
    }
    for (auto [i, v] : vertex_overrides) {
        if (i >= g.num_vertices()) throw InvalidParameter("vertex override index out of range");
        ising.vertex_lambda[i] = v;
    }
    ising.validate(g);
    return ising;
}

RandomClusterSpec ModelSpec::to_random_cluster(const Graph& g) const {
    RandomClusterSpec rc;
    rc.edge_p.assign(g.num_edges(), default_edge_p);
    rc.vertex_lambda.assign(g.num_vertices(), default_vertex_lambda);
    for (auto [i, v] : edge_overrides) {
        if (i >= g.num_edges()) throw InvalidParameter("edge override index out of range");
        rc.edge_p[i] = v;
    }
    for (auto [i, v] : vertex_overrides) {
        if (i >= g.num_vertices()) throw InvalidParameter("vertex override index out of range");
        rc.vertex_lambda[i] = v;
    }
    rc.validate(g);
    return rc;
}

}  // namespace anneal
