#include "siruv/csv.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <string>
#include <system_error>

namespace siruv {

namespace {

constexpr const char* header = "t,patch,S,I,R,U,V";

// 17 significant digits round-trip any double exactly
void append_number(std::string& line, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    line.append(buf, res.ptr);
}

double parse_number(std::string_view field, std::size_t line_no) {
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw ParseError("line " + std::to_string(line_no) + ": bad number '" +
                         std::string(field) + "'");
    return v;
}

} // namespace

void write_trajectory(const Trajectory& traj, const std::filesystem::path& path) {
    traj.validate();
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out)
        throw Error("cannot open '" + path.string() + "': " + std::strerror(errno));

    std::string line;
    out << header << '\n';
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        for (std::size_t p = 0; p < traj.states[k].patches(); ++p) {
            line.clear();
            append_number(line, traj.times[k]);
            line += ',';
            line += std::to_string(p);
            const std::size_t base = compartment::count * p;
            for (std::size_t c = 0; c < compartment::count; ++c) {
                line += ',';
                append_number(line, traj.states[k][base + c]);
            }
            line += '\n';
            out << line;
        }
    }
    out.flush();
    if (!out)
        throw Error("write to '" + path.string() + "' failed: " + std::strerror(errno));
}

Trajectory read_trajectory(const std::filesystem::path& path, ModelKind model) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path.string() + "': " + std::strerror(errno));

    std::string line;
    if (!std::getline(in, line) || line != header)
        throw ParseError("'" + path.string() + "' is missing the trajectory header");

    Trajectory traj;
    traj.model = model;
    traj.provenance = path.string();

    std::vector<double> flat;
    double block_t = 0.0;
    std::size_t line_no = 1;
    auto flush_block = [&] {
        if (flat.empty()) return;
        traj.times.push_back(block_t);
        traj.states.push_back(SystemState::from_flat(std::move(flat)));
        flat.clear();
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string_view> fields;
        std::string_view rest = line;
        while (true) {
            const auto comma = rest.find(',');
            fields.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (fields.size() != 2 + compartment::count)
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(2 + compartment::count) + " fields");

        const double t = parse_number(fields[0], line_no);
        const double patch = parse_number(fields[1], line_no);
        if (patch == 0.0)
            flush_block();
        else if (t != block_t)
            throw ParseError("line " + std::to_string(line_no) +
                             ": time changes inside a sample block");
        block_t = t;
        if (static_cast<std::size_t>(patch) * compartment::count != flat.size())
            throw ParseError("line " + std::to_string(line_no) + ": patch index out of order");
        for (std::size_t c = 0; c < compartment::count; ++c)
            flat.push_back(parse_number(fields[2 + c], line_no));
    }
    flush_block();

    traj.validate();
    return traj;
}

} // namespace siruv
