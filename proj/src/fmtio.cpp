#include "fmtio.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace ps {

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            out.close();
            std::remove(tmp.c_str());
            throw IoError("write to '" + tmp + "' failed");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("rename to '" + path + "' failed: " + std::strerror(errno));
    }
}

std::string trace_to_csv(const EnergyTrace& trace) {
    std::string out = "t,E_total,E_block1,E_block2\n";
    for (std::size_t i = 0; i < trace.rows(); ++i) {
        out += fmt_g17(trace.t[i]);
        out += ',';
        out += fmt_g17(trace.E_total[i]);
        out += ',';
        out += fmt_g17(trace.E_block1[i]);
        out += ',';
        out += fmt_g17(trace.E_block2[i]);
        out += '\n';
    }
    return out;
}

void write_trace_csv(const EnergyTrace& trace, const std::string& path) {
    atomic_write_file(path, trace_to_csv(trace));
}

std::string scan_to_csv(const FrequencyScan& scan) {
    std::string out = "s,value\n";
    for (Index i = 0; i < scan.s.size(); ++i) {
        out += fmt_g17(scan.s(i));
        out += ',';
        out += fmt_g17(scan.value(i));
        out += '\n';
    }
    return out;
}

void write_scan_csv(const FrequencyScan& scan, const std::string& path) {
    atomic_write_file(path, scan_to_csv(scan));
}

EnergyTrace read_trace_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("'" + path + "': empty CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,E_total,E_block1,E_block2")
        throw ValidationError("'" + path + "': unexpected CSV header '" + line + "'");
    EnergyTrace tr;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double vals[4];
        const char* p = line.c_str();
        for (int k = 0; k < 4; ++k) {
            char* end = nullptr;
            vals[k] = std::strtod(p, &end);
            if (end == p)
                throw ValidationError("'" + path + "': bad number on line " +
                                      std::to_string(lineno));
            p = end;
            if (k < 3) {
                if (*p != ',')
                    throw ValidationError("'" + path + "': expected ',' on line " +
                                          std::to_string(lineno));
                ++p;
            }
        }
        if (*p != '\0')
            throw ValidationError("'" + path + "': trailing characters on line " +
                                  std::to_string(lineno));
        tr.t.push_back(vals[0]);
        tr.E_total.push_back(vals[1]);
        tr.E_block1.push_back(vals[2]);
        tr.E_block2.push_back(vals[3]);
    }
    if (tr.rows() == 0) throw ValidationError("'" + path + "': no data rows");
    return tr;
}

std::string fit_report_json(const BoundFit& fit) {
    std::string r2 = std::isnan(fit.r2) ? "null" : fmt_g17(fit.r2);
    std::ostringstream out;
    out << "{\"alpha\":" << fmt_g17(fit.alpha) << ",\"constant\":" << fmt_g17(fit.constant)
        << ",\"window\":[" << fmt_g17(fit.window[0]) << ',' << fmt_g17(fit.window[1])
        << "],\"r2\":" << r2 << "}\n";
    return out.str();
}

}  // namespace ps
