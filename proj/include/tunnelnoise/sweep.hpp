#pragma once

// Parameter sweeps over bias, gap or electron energy, with CSV/JSON output.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tunnelnoise/barrier.hpp"
#include "tunnelnoise/errors.hpp"
#include "tunnelnoise/noise.hpp"
#include "tunnelnoise/uncertainty.hpp"

namespace tunnelnoise {

enum class SweepVariable { bias_phi, gap, energy };
enum class OutputColumn { T, R, delta_l, delta_p, product, s_fq };
enum class OutputFormat { csv, json };

inline const char* column_name(OutputColumn c) {
    switch (c) {
        case OutputColumn::T: return "T";
        case OutputColumn::R: return "R";
        case OutputColumn::delta_l: return "delta_l";
        case OutputColumn::delta_p: return "delta_p";
        case OutputColumn::product: return "product";
        case OutputColumn::s_fq: return "s_fq";
    }
    return "?";
}

inline const char* column_unit(OutputColumn c) {
    switch (c) {
        case OutputColumn::T:
        case OutputColumn::R: return "1";
        case OutputColumn::delta_l: return "m";
        case OutputColumn::delta_p: return "kg m/s";
        case OutputColumn::product: return "hbar";
        case OutputColumn::s_fq: return "N^2/Hz";
    }
    return "?";
}

inline const char* variable_name(SweepVariable v) {
    switch (v) {
        case SweepVariable::bias_phi: return "phi";
        case SweepVariable::gap: return "gap";
        case SweepVariable::energy: return "E";
    }
    return "?";
}

inline const char* variable_unit(SweepVariable v) { return v == SweepVariable::gap ? "nm" : "eV"; }

inline BarrierFamily parse_family(const std::string& s) {
    if (s == "sym") return BarrierFamily::SymmetricRect;
    if (s == "asym") return BarrierFamily::AsymmetricRect;
    if (s == "field") return BarrierFamily::LinearField;
    throw UsageError("barrier: expected sym, asym or field, got '" + s + "'");
}

inline SweepVariable parse_variable(const std::string& s) {
    if (s == "phi") return SweepVariable::bias_phi;
    if (s == "gap") return SweepVariable::gap;
    if (s == "E") return SweepVariable::energy;
    throw UsageError("sweep: expected phi, gap or E, got '" + s + "'");
}

inline OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw UsageError("format: expected csv or json, got '" + s + "'");
}

inline std::vector<OutputColumn> parse_outputs(const std::string& list) {
    std::vector<OutputColumn> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        OutputColumn c;
        if (item == "T") c = OutputColumn::T;
        else if (item == "R") c = OutputColumn::R;
        else if (item == "delta_l") c = OutputColumn::delta_l;
        else if (item == "delta_p") c = OutputColumn::delta_p;
        else if (item == "product") c = OutputColumn::product;
        else if (item == "s_fq") c = OutputColumn::s_fq;
        else throw UsageError("outputs: unknown column '" + item + "'");
        for (OutputColumn seen : out) {
            if (seen == c) throw UsageError("outputs: column '" + item + "' listed twice");
        }
        out.push_back(c);
    }
    if (out.empty()) throw UsageError("outputs: at least one column is required");
    return out;
}

struct SweepConfig {
    BarrierFamily family = BarrierFamily::LinearField;
    double V0_eV = 5.0;
    double E_eV = 1.0;
    double phi_eV = 0.0;
    double gap_nm = 1.0;  // default for bias sweeps; override with --gap
    SweepVariable variable = SweepVariable::bias_phi;
    double min = 0.0;
    double max = 5.0;
    int steps = 200;
    std::vector<OutputColumn> outputs{OutputColumn::T, OutputColumn::R, OutputColumn::delta_l, OutputColumn::delta_p,
                                      OutputColumn::product};
    std::uint64_t n_electrons = 1;
    double I0 = 1e-6;  // A, only used by s_fq
    OutputFormat format = OutputFormat::csv;
    std::string out_path = "-";

    bool wants(OutputColumn c) const {
        for (OutputColumn o : outputs) {
            if (o == c) return true;
        }
        return false;
    }

    void validate() const {
        auto finite = [](double v, const char* name) {
            if (!std::isfinite(v)) throw UsageError(std::string(name) + ": must be finite");
        };
        finite(V0_eV, "V0");
        finite(E_eV, "E");
        finite(phi_eV, "phi");
        finite(gap_nm, "gap");
        finite(min, "min");
        finite(max, "max");
        if (steps < 2) throw UsageError("steps: at least 2 grid points are required");
        if (!(min < max)) throw UsageError("min/max: min must be below max");
        if (!(V0_eV > 0.0)) throw UsageError("V0: must be positive");
        if (n_electrons < 1) throw UsageError("N: must be at least 1");
        if (outputs.empty()) throw UsageError("outputs: at least one column is required");
        if (wants(OutputColumn::s_fq) && !(I0 > 0.0 && std::isfinite(I0))) {
            throw UsageError("I0: must be positive when s_fq is requested");
        }

        if (variable == SweepVariable::energy) {
            if (!(min > 0.0) || !(max < V0_eV)) throw UsageError("min/max: energy sweep must stay inside (0, V0)");
        } else if (!(E_eV > 0.0 && E_eV < V0_eV)) {
            throw UsageError("E: must satisfy 0 < E < V0");
        }
        if (variable == SweepVariable::gap) {
            if (!(min > 0.0)) throw UsageError("min: gap sweep must start above 0 nm");
        } else if (!(gap_nm > 0.0)) {
            throw UsageError("gap: must be positive");
        }
        if (variable == SweepVariable::bias_phi) {
            if (family == BarrierFamily::SymmetricRect) {
                throw UsageError("sweep: a bias sweep needs barrier asym or field");
            }
            if (!(min >= 0.0)) throw UsageError("min: bias sweep must start at phi >= 0");
        } else {
            if (!(phi_eV >= 0.0)) throw UsageError("phi: must be non-negative");
            if (family == BarrierFamily::SymmetricRect && phi_eV != 0.0) {
                throw UsageError("phi: the symmetric barrier has phi = 0");
            }
        }
    }

    double grid_value(int i) const {
        if (i == steps - 1) return max;
        return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }

    BarrierSpec barrier_at(double value) const {
        double phi = phi_eV;
        double gap = gap_nm;
        if (variable == SweepVariable::bias_phi) phi = value;
        if (variable == SweepVariable::gap) gap = value;
        return BarrierSpec{family, Energy::eV(V0_eV), Energy::eV(phi), Length::nm(gap), Length::meters(0.0)};
    }

    Energy energy_at(double value) const { return Energy::eV(variable == SweepVariable::energy ? value : E_eV); }
};

struct SweepRow {
    double value = 0.0;            // sweep variable, in its unit
    std::vector<double> columns;   // requested outputs, config order
    double delta_p = 0.0;          // always kept for the summary
    double product_over_hbar = 0.0;
};

struct SweepSummary {
    std::size_t grid_points = 0;
    std::size_t computed = 0;
    std::size_t skipped = 0;
    std::optional<bool> delta_p_nondecreasing;  // bias sweeps only
    std::optional<bool> product_nondecreasing;  // bias sweeps only
    std::optional<double> zero_bias_product;    // bias sweeps only, product / hbar at phi = 0
};

struct SweepTable {
    SweepConfig config;
    std::vector<SweepRow> rows;
    SweepSummary summary;
};

inline bool is_nondecreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] < v[i - 1]) return false;
    }
    return true;
}

/// One row per grid point in increasing order. Points outside the physical
/// domain are skipped and counted; consistency failures propagate.
inline SweepTable run_sweep(const SweepConfig& config) {
    config.validate();
    SweepTable table;
    table.config = config;
    table.summary.grid_points = static_cast<std::size_t>(config.steps);

    for (int i = 0; i < config.steps; ++i) {
        const double value = config.grid_value(i);
        try {
            const BarrierSpec spec = config.barrier_at(value);
            const Energy e = config.energy_at(value);
            const UncertaintyResult u = uncertainty_product(e, spec, config.n_electrons);
            SweepRow row;
            row.value = value;
            row.delta_p = u.delta_p;
            row.product_over_hbar = u.product_over_hbar;
            for (OutputColumn c : config.outputs) {
                switch (c) {
                    case OutputColumn::T: row.columns.push_back(u.T); break;
                    case OutputColumn::R: row.columns.push_back(u.R); break;
                    case OutputColumn::delta_l: row.columns.push_back(u.delta_l); break;
                    case OutputColumn::delta_p: row.columns.push_back(u.delta_p); break;
                    case OutputColumn::product: row.columns.push_back(u.product_over_hbar); break;
                    case OutputColumn::s_fq: row.columns.push_back(quantum_force_psd(config.I0, e, spec)); break;
                }
            }
            bool finite = std::isfinite(row.value);
            for (double c : row.columns) finite = finite && std::isfinite(c);
            if (!finite) throw RangeError("non-finite output");
            table.rows.push_back(std::move(row));
        } catch (const DomainError&) {
            ++table.summary.skipped;
        } catch (const RangeError&) {
            ++table.summary.skipped;
        }
    }
    table.summary.computed = table.rows.size();

    if (config.variable == SweepVariable::bias_phi) {
        std::vector<double> dp, prod;
        for (const SweepRow& r : table.rows) {
            dp.push_back(r.delta_p);
            prod.push_back(r.product_over_hbar);
        }
        table.summary.delta_p_nondecreasing = is_nondecreasing(dp);
        table.summary.product_nondecreasing = is_nondecreasing(prod);
        table.summary.zero_bias_product =
            uncertainty_product(config.energy_at(0.0), config.barrier_at(0.0), config.n_electrons).product_over_hbar;
    }
    return table;
}

/// 12 significant digits in scientific notation.
inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

inline void write_csv(const SweepTable& t, std::ostream& os) {
    const SweepConfig& c = t.config;
    os << "# units: " << variable_name(c.variable) << " [" << variable_unit(c.variable) << "]";
    for (OutputColumn col : c.outputs) os << ", " << column_name(col) << " [" << column_unit(col) << "]";
    os << "\n";
    os << variable_name(c.variable);
    for (OutputColumn col : c.outputs) os << "," << column_name(col);
    os << "\n";
    for (const SweepRow& r : t.rows) {
        os << format_number(r.value);
        for (double v : r.columns) os << "," << format_number(v);
        os << "\n";
    }
    os << "# barrier=" << to_string(c.family) << " V0=" << format_number(c.V0_eV) << " eV E=" << format_number(c.E_eV)
       << " eV phi=" << format_number(c.phi_eV) << " eV gap=" << format_number(c.gap_nm) << " nm N=" << c.n_electrons
       << "\n";
    os << "# rows: " << t.summary.computed << " computed, " << t.summary.skipped << " skipped\n";
    auto yes_no = [](bool b) { return b ? "yes" : "no"; };
    if (t.summary.delta_p_nondecreasing) os << "# delta_p nondecreasing: " << yes_no(*t.summary.delta_p_nondecreasing) << "\n";
    if (t.summary.product_nondecreasing) os << "# product nondecreasing: " << yes_no(*t.summary.product_nondecreasing) << "\n";
    if (t.summary.zero_bias_product) os << "# zero-bias product: " << format_number(*t.summary.zero_bias_product) << " hbar\n";
}

inline nlohmann::ordered_json to_json(const SweepTable& t) {
    const SweepConfig& c = t.config;
    nlohmann::ordered_json j;
    j["config"] = {{"barrier", to_string(c.family)},
                   {"V0_eV", c.V0_eV},
                   {"E_eV", c.E_eV},
                   {"phi_eV", c.phi_eV},
                   {"gap_nm", c.gap_nm},
                   {"sweep", variable_name(c.variable)},
                   {"min", c.min},
                   {"max", c.max},
                   {"steps", c.steps},
                   {"N", c.n_electrons},
                   {"I0_A", c.I0}};
    nlohmann::ordered_json units;
    units[variable_name(c.variable)] = variable_unit(c.variable);
    std::vector<std::string> names{variable_name(c.variable)};
    for (OutputColumn col : c.outputs) {
        units[column_name(col)] = column_unit(col);
        names.emplace_back(column_name(col));
    }
    j["units"] = units;
    j["columns"] = names;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const SweepRow& r : t.rows) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        row.push_back(r.value);
        for (double v : r.columns) row.push_back(v);
        rows.push_back(row);
    }
    j["rows"] = rows;
    nlohmann::ordered_json s;
    s["grid_points"] = t.summary.grid_points;
    s["computed"] = t.summary.computed;
    s["skipped"] = t.summary.skipped;
    if (t.summary.delta_p_nondecreasing) s["delta_p_nondecreasing"] = *t.summary.delta_p_nondecreasing;
    if (t.summary.product_nondecreasing) s["product_nondecreasing"] = *t.summary.product_nondecreasing;
    if (t.summary.zero_bias_product) s["zero_bias_product"] = *t.summary.zero_bias_product;
    j["summary"] = s;
    return j;
}

inline void write_json(const SweepTable& t, std::ostream& os) { os << to_json(t).dump(2) << "\n"; }

}  // namespace tunnelnoise
