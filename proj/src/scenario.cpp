// SPDX-License-Identifier: Apache-2.0
//
// risim - link-level simulation of RIS-assisted downlink MIMO systems
// Copyright (C) 2026 The risim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "risim/scenario.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <utility>

namespace risim
{
    namespace
    {
        using Setter = std::function<void(ScenarioConfig &, const std::string &)>;
        using Getter = std::function<std::string(const ScenarioConfig &)>;

        struct Field
        {
            std::string section;
            std::string key;
            Setter set;
            Getter get;
        };

        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t");
            if (b == std::string::npos)
                return {};
            const auto e = s.find_last_not_of(" \t");
            return s.substr(b, e - b + 1);
        }

        std::vector<std::string> split_list(const std::string &s)
        {
            std::vector<std::string> out;
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, ','))
                out.push_back(trim(item));
            return out;
        }

        template <typename T>
        T parse_value(const std::string &text, const std::string &what)
        {
            const std::string s = trim(text);
            T v{};
            const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (s.empty() || ec != std::errc() || end != s.data() + s.size())
                throw ConfigError("cannot parse '" + text + "' for " + what + ".");
            return v;
        }

        Vec3 parse_vec3(const std::string &text, const std::string &what)
        {
            const auto parts = split_list(text);
            if (parts.size() != 3)
                throw ConfigError(what + " needs three comma-separated values.");
            return {parse_value<double>(parts[0], what), parse_value<double>(parts[1], what),
                    parse_value<double>(parts[2], what)};
        }

        std::string vec3_text(const Vec3 &v)
        {
            return format_number(v[0]) + ", " + format_number(v[1]) + ", " + format_number(v[2]);
        }

        template <typename T, typename F>
        std::string join(const std::vector<T> &items, F &&to_text)
        {
            std::string out;
            for (std::size_t i = 0; i < items.size(); ++i)
                out += (i ? ", " : "") + std::string(to_text(items[i]));
            return out;
        }

        // `access` is a generic lambda returning a reference to the field for const and non-const configs
        template <typename A>
        Field real_field(std::string section, std::string key, A access)
        {
            const std::string what = section + "." + key;
            return {section, key,
                    [access, what](ScenarioConfig &c, const std::string &v) { access(c) = parse_value<double>(v, what); },
                    [access](const ScenarioConfig &c) { return format_number(access(c)); }};
        }

        template <typename A>
        Field int_field(std::string section, std::string key, A access)
        {
            const std::string what = section + "." + key;
            return {section, key,
                    [access, what](ScenarioConfig &c, const std::string &v) { access(c) = parse_value<int>(v, what); },
                    [access](const ScenarioConfig &c) { return std::to_string(access(c)); }};
        }

        template <typename A>
        Field vec3_field(std::string section, std::string key, A access)
        {
            const std::string what = section + "." + key;
            return {section, key,
                    [access, what](ScenarioConfig &c, const std::string &v) { access(c) = parse_vec3(v, what); },
                    [access](const ScenarioConfig &c) { return vec3_text(access(c)); }};
        }

        void add_link_fields(std::vector<Field> &f, LinkRole role)
        {
            const std::string s(link_name(role));
            f.push_back({s, "beta_db",
                         [role, s](ScenarioConfig &c, const std::string &v)
                         { c.link(role).params.beta = db_to_linear(parse_value<double>(v, s + ".beta_db")); },
                         [role](const ScenarioConfig &c) { return format_number(linear_to_db(c.link(role).params.beta)); }});
            f.push_back(real_field(s, "d0", [role](auto &c) -> auto & { return c.link(role).params.d0; }));
            f.push_back(real_field(s, "eta", [role](auto &c) -> auto & { return c.link(role).params.eta; }));
            f.push_back(real_field(s, "k_factor", [role](auto &c) -> auto & { return c.link(role).params.k_factor; }));
            f.push_back(real_field(s, "blockage_db", [role](auto &c) -> auto & { return c.link(role).params.blockage_db; }));
            f.push_back(real_field(s, "shadow_db", [role](auto &c) -> auto & { return c.link(role).params.shadow_db; }));
            f.push_back(vec3_field(s, "cluster_min", [role](auto &c) -> auto & { return c.link(role).clusters.lo; }));
            f.push_back(vec3_field(s, "cluster_max", [role](auto &c) -> auto & { return c.link(role).clusters.hi; }));
        }

        std::vector<Field> build_fields()
        {
            std::vector<Field> f;
            f.push_back(real_field("system", "carrier_hz", [](auto &c) -> auto & { return c.system.carrier_hz; }));
            f.push_back(real_field("system", "bandwidth_hz", [](auto &c) -> auto & { return c.system.bandwidth_hz; }));
            f.push_back(real_field("system", "noise_figure_db", [](auto &c) -> auto & { return c.system.noise_figure_db; }));
            f.push_back(real_field("system", "n0_dbm_hz", [](auto &c) -> auto & { return c.system.n0_dbm_hz; }));
            f.push_back(real_field("system", "gamma_thr", [](auto &c) -> auto & { return c.system.gamma_thr; }));

            f.push_back(int_field("bs", "n_y", [](auto &c) -> auto & { return c.bs.n_y; }));
            f.push_back(int_field("bs", "n_z", [](auto &c) -> auto & { return c.bs.n_z; }));
            f.push_back(real_field("bs", "spacing_wavelengths", [](auto &c) -> auto & { return c.bs.spacing_wavelengths; }));
            f.push_back(vec3_field("bs", "center", [](auto &c) -> auto & { return c.bs.center; }));

            f.push_back(int_field("ris", "tile_q_y", [](auto &c) -> auto & { return c.ris.tile_q_y; }));
            f.push_back(int_field("ris", "tile_q_z", [](auto &c) -> auto & { return c.ris.tile_q_z; }));
            f.push_back(real_field("ris", "spacing_wavelengths", [](auto &c) -> auto & { return c.ris.spacing_wavelengths; }));
            f.push_back(vec3_field("ris", "center", [](auto &c) -> auto & { return c.ris.center; }));
            f.push_back({"ris", "tile_order",
                         [](ScenarioConfig &c, const std::string &v)
                         {
                             const std::string t = trim(v);
                             if (t == "raster_y")
                                 c.ris.tile_order = TileOrder::raster_y;
                             else if (t == "raster_z")
                                 c.ris.tile_order = TileOrder::raster_z;
                             else
                                 throw ConfigError("ris.tile_order must be raster_y or raster_z.");
                         },
                         [](const ScenarioConfig &c)
                         { return std::string(c.ris.tile_order == TileOrder::raster_y ? "raster_y" : "raster_z"); }});

            f.push_back(vec3_field("ue", "area_center", [](auto &c) -> auto & { return c.ue.area_center; }));
            f.push_back(real_field("ue", "area_side", [](auto &c) -> auto & { return c.ue.area_side; }));

            add_link_fields(f, LinkRole::direct);
            add_link_fields(f, LinkRole::tx_to_ris);
            add_link_fields(f, LinkRole::ris_to_rx);

            f.push_back(int_field("geometric", "clusters", [](auto &c) -> auto & { return c.geometric.n_clusters; }));
            f.push_back(int_field("geometric", "subpaths", [](auto &c) -> auto & { return c.geometric.n_subpaths; }));
            f.push_back({"geometric", "gain_law",
                         [](ScenarioConfig &c, const std::string &v)
                         {
                             const std::string t = trim(v);
                             if (t == "gaussian")
                                 c.geometric.gain_law = ClusterGainLaw::gaussian;
                             else if (t == "constant")
                                 c.geometric.gain_law = ClusterGainLaw::constant;
                             else
                                 throw ConfigError("geometric.gain_law must be gaussian or constant.");
                         },
                         [](const ScenarioConfig &c)
                         { return std::string(c.geometric.gain_law == ClusterGainLaw::gaussian ? "gaussian" : "constant"); }});

            f.push_back(int_field("precoder", "max_iters", [](auto &c) -> auto & { return c.precoder.max_iters; }));
            f.push_back(real_field("precoder", "tolerance", [](auto &c) -> auto & { return c.precoder.tolerance; }));

            f.push_back({"sweep", "models",
                         [](ScenarioConfig &c, const std::string &v)
                         {
                             c.sweep.models.clear();
                             for (const auto &name : split_list(v))
                             {
                                 const auto m = parse_model(name);
                                 if (!m)
                                     throw ConfigError("sweep.models: unknown channel model '" + name + "'.");
                                 c.sweep.models.push_back(*m);
                             }
                         },
                         [](const ScenarioConfig &c) { return join(c.sweep.models, model_name); }});
            f.push_back({"sweep", "q",
                         [](ScenarioConfig &c, const std::string &v)
                         {
                             c.sweep.q.clear();
                             for (const auto &item : split_list(v))
                                 c.sweep.q.push_back(parse_value<Index>(item, "sweep.q"));
                         },
                         [](const ScenarioConfig &c) { return join(c.sweep.q, [](Index q) { return std::to_string(q); }); }});
            f.push_back({"sweep", "n_ue",
                         [](ScenarioConfig &c, const std::string &v)
                         {
                             c.sweep.n_ue.clear();
                             for (const auto &item : split_list(v))
                                 c.sweep.n_ue.push_back(parse_value<int>(item, "sweep.n_ue"));
                         },
                         [](const ScenarioConfig &c) { return join(c.sweep.n_ue, [](int n) { return std::to_string(n); }); }});
            f.push_back({"sweep", "trials",
                         [](ScenarioConfig &c, const std::string &v) { c.sweep.trials = parse_value<long>(v, "sweep.trials"); },
                         [](const ScenarioConfig &c) { return std::to_string(c.sweep.trials); }});
            f.push_back({"sweep", "seed",
                         [](ScenarioConfig &c, const std::string &v)
                         { c.sweep.seed = parse_value<std::uint64_t>(v, "sweep.seed"); },
                         [](const ScenarioConfig &c) { return std::to_string(c.sweep.seed); }});
            f.push_back({"sweep", "exec",
                         [](ScenarioConfig &c, const std::string &v)
                         {
                             const std::string t = trim(v);
                             if (t == "parallel")
                                 c.sweep.exec = Exec::parallel;
                             else if (t == "serial")
                                 c.sweep.exec = Exec::serial;
                             else
                                 throw ConfigError("sweep.exec must be parallel or serial.");
                         },
                         [](const ScenarioConfig &c)
                         { return std::string(c.sweep.exec == Exec::parallel ? "parallel" : "serial"); }});
            return f;
        }

        const std::vector<Field> &fields()
        {
            static const std::vector<Field> f = build_fields();
            return f;
        }

        ScenarioConfig apply_tree(const boost::property_tree::ptree &tree, ScenarioConfig config)
        {
            for (const auto &[section, body] : tree)
            {
                if (body.empty())
                    throw ConfigError("key '" + section + "' must appear inside a section.");
                for (const auto &[key, value] : body)
                {
                    const Field *match = nullptr;
                    for (const auto &f : fields())
                        if (f.section == section && f.key == key)
                            match = &f;
                    if (!match)
                        throw ConfigError("unknown configuration key '" + section + "." + key + "'.");
                    match->set(config, value.data());
                }
            }
            config.validate();
            return config;
        }

        void require(bool ok, const std::string &message)
        {
            if (!ok)
                throw ConfigError(message);
        }
    }

    const LinkSettings &ScenarioConfig::link(LinkRole role) const
    {
        switch (role)
        {
        case LinkRole::direct:
            return bs_ue;
        case LinkRole::tx_to_ris:
            return bs_ris;
        case LinkRole::ris_to_rx:
            break;
        }
        return ris_ue;
    }

    LinkSettings &ScenarioConfig::link(LinkRole role)
    {
        return const_cast<LinkSettings &>(std::as_const(*this).link(role));
    }

    void ScenarioConfig::validate() const
    {
        require(system.carrier_hz > 0.0, "system.carrier_hz must be positive.");
        require(system.bandwidth_hz > 0.0, "system.bandwidth_hz must be positive.");
        require(std::isfinite(system.noise_figure_db) && std::isfinite(system.n0_dbm_hz),
                "noise budget must be finite.");
        require(system.gamma_thr > 0.0, "system.gamma_thr must be positive.");
        require(bs.n_y >= 1 && bs.n_z >= 1, "bs array needs at least one element per axis.");
        require(bs.spacing_wavelengths > 0.0, "bs.spacing_wavelengths must be positive.");
        require(ris.tile_q_y >= 1 && ris.tile_q_z >= 1, "ris tile shape must be >= 1.");
        require(ris.spacing_wavelengths > 0.0, "ris.spacing_wavelengths must be positive.");
        require(ue.area_side >= 0.0, "ue.area_side cannot be negative.");
        for (auto role : {LinkRole::direct, LinkRole::tx_to_ris, LinkRole::ris_to_rx})
        {
            link(role).params.validate();
            require(!link(role).clusters.empty(), std::string(link_name(role)) + ": empty cluster volume.");
        }
        require(geometric.n_clusters >= 1 && geometric.n_subpaths >= 1, "geometric clusters and subpaths must be >= 1.");
        require(precoder.max_iters >= 1, "precoder.max_iters must be >= 1.");
        require(precoder.tolerance > 0.0, "precoder.tolerance must be positive.");
        require(!sweep.models.empty(), "sweep.models cannot be empty.");
        require(!sweep.q.empty(), "sweep.q cannot be empty.");
        require(!sweep.n_ue.empty(), "sweep.n_ue cannot be empty.");
        require(sweep.trials >= 1, "sweep.trials must be >= 1.");
        const Index tile = Index(ris.tile_q_y) * ris.tile_q_z;
        for (Index q : sweep.q)
            require(q >= tile && q % tile == 0,
                    "sweep.q: " + std::to_string(q) + " is not a multiple of the tile size " + std::to_string(tile) + ".");
        for (int n : sweep.n_ue)
            require(n >= 1 && n <= bs.n_y * bs.n_z, "sweep.n_ue: need 1 <= N_UE <= number of BS antennas.");
    }

    ScenarioConfig default_scenario()
    {
        ScenarioConfig c;
        c.bs_ue.params.eta = 3.5;
        c.bs_ue.params.k_factor = 0.0;
        c.bs_ue.params.blockage_db = -40.0;
        c.bs_ue.clusters = {{0.0, 0.0, 0.0}, {40.0, 60.0, 10.0}};

        c.bs_ris.params.eta = 2.0;
        c.bs_ris.params.k_factor = 10.0;
        c.bs_ris.clusters = {{0.0, 0.0, 0.0}, {40.0, 50.0, 10.0}};

        c.ris_ue.params.eta = 2.8;
        c.ris_ue.params.k_factor = 1.0;
        c.ris_ue.clusters = {{0.0, 40.0, 0.0}, {40.0, 60.0, 10.0}};
        return c;
    }

    ScenarioConfig paper_scenario()
    {
        ScenarioConfig c = default_scenario();
        c.sweep.trials = 1000;
        c.sweep.q = {128, 256, 512, 1024, 2048, 4096};
        return c;
    }

    ScenarioConfig preset_scenario(const std::string &name)
    {
        if (name == "default" || name == "desk")
            return default_scenario();
        if (name == "paper")
            return paper_scenario();
        throw ConfigError("unknown preset '" + name + "' (expected default, desk or paper).");
    }

    ScenarioConfig parse_scenario(const std::string &text, const ScenarioConfig &base)
    {
        std::istringstream in(text);
        boost::property_tree::ptree tree;
        try
        {
            boost::property_tree::read_ini(in, tree);
        }
        catch (const boost::property_tree::ini_parser_error &e)
        {
            throw ConfigError(std::string("malformed configuration: ") + e.what());
        }
        return apply_tree(tree, base);
    }

    ScenarioConfig load_scenario(const std::string &path, const ScenarioConfig &base)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open configuration file '" + path + "'.");
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_scenario(buf.str(), base);
    }

    std::string dump_scenario(const ScenarioConfig &config)
    {
        std::string out, section;
        for (const auto &f : fields())
        {
            if (f.section != section)
            {
                out += (section.empty() ? "[" : "\n[") + f.section + "]\n";
                section = f.section;
            }
            out += f.key + " = " + f.get(config) + "\n";
        }
        return out;
    }

    double noise_power(const SystemParams &system)
    {
        return std::pow(10.0, (system.n0_dbm_hz + 10.0 * std::log10(system.bandwidth_hz) + system.noise_figure_db - 30.0) / 10.0);
    }

    double noise_power(const ScenarioConfig &config) { return noise_power(config.system); }

    double wavelength(const ScenarioConfig &config) { return wavelength_from_carrier(config.system.carrier_hz); }

    ArrayGeometry bs_geometry(const ScenarioConfig &config)
    {
        const double d = config.bs.spacing_wavelengths * wavelength(config);
        return ArrayGeometry::upa_centered(config.bs.n_y, config.bs.n_z, d, d, config.bs.center);
    }

    TilePartition ris_partition(const ScenarioConfig &config, Index q)
    {
        return TilePartition::for_element_count(q, config.ris.tile_q_y, config.ris.tile_q_z);
    }

    ArrayGeometry ris_geometry(const ScenarioConfig &config, const TilePartition &partition)
    {
        const double d = config.ris.spacing_wavelengths * wavelength(config);
        return ArrayGeometry::upa_centered(int(partition.ris_n_y()), int(partition.ris_n_z()), d, d, config.ris.center);
    }

    std::string format_number(double v)
    {
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, res.ptr);
    }
}
