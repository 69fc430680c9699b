#include "ep3/config_io.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ep3 {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_number(const std::string& s, const std::string& key) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (trim(s.substr(pos)).empty()) return v;
    } catch (const std::exception&) {
    }
    throw std::runtime_error("config: bad numeric value for '" + key + "': " + s);
}

std::array<double, 3> parse_triple(std::string s, const std::string& key) {
    s = trim(s);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw std::runtime_error("config: '" + key + "' must be a bracketed list of three numbers");
    s = s.substr(1, s.size() - 2);
    std::vector<double> vals;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(parse_number(trim(item), key));
    if (vals.size() != 3)
        throw std::runtime_error("config: '" + key + "' must contain exactly three numbers");
    return {vals[0], vals[1], vals[2]};
}

}  // namespace

SystemConfig parse_config(const std::string& text) {
    SystemConfig cfg;
    bool saw_passive = false, saw_coupling = false;

    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t cut = line.find_first_of("#;");
        if (cut != std::string::npos) line = line.substr(0, cut);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error("config: malformed section header at line " +
                                         std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (section == "passive") saw_passive = true;
            else if (section == "coupling") saw_coupling = true;
            else throw std::runtime_error("config: unknown section '" + section + "'");
            continue;
        }

        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: expected 'key = value' at line " +
                                     std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (section == "passive" && key == "eps") cfg.eps = parse_triple(value, key);
        else if (section == "passive" && key == "tau") cfg.tau = parse_triple(value, key);
        else if (section == "coupling" && key == "gamma") cfg.gamma = parse_number(value, key);
        else if (section == "coupling" && key == "kappa") cfg.kappa = parse_number(value, key);
        else
            throw std::runtime_error("config: unknown key '" + key + "' in section '" + section +
                                     "'");
    }

    if (!saw_passive || !saw_coupling)
        throw std::runtime_error("config: sections [passive] and [coupling] are required");
    cfg.validate();
    return cfg;
}

SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string default_config_text() {
    return
        "[passive]\n"
        "eps = [0.76, 0.65, 0.30]\n"
        "tau = [0.005, 0.0025, 0.0002]\n"
        "\n"
        "[coupling]\n"
        "gamma = 0.95\n"
        "kappa = 0.30\n";
}

}  // namespace ep3
