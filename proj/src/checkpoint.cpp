// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#include "plora/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

static_assert(std::endian::native == std::endian::little,
              "checkpoint blobs are written as native doubles and specified little-endian");

namespace plora {

namespace {

constexpr char kMagic[4] = {'P', 'L', 'C', 'K'};

void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

std::uint32_t get_u32(const std::string& buf, std::size_t pos) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(buf[pos])) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(buf[pos + 1])) << 8) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(buf[pos + 2])) << 16) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(buf[pos + 3])) << 24);
}

} // namespace

const Matrix* CheckpointData::find_tensor(const std::string& name) const {
    for (const NamedTensor& t : tensors) {
        if (t.name == name) return &t.value;
    }
    return nullptr;
}

std::string tensor_digest(const std::vector<NamedTensor>& tensors) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const NamedTensor& t : tensors) {
        const unsigned char* bytes = reinterpret_cast<const unsigned char*>(t.value.data());
        const std::size_t n = t.value.size() * sizeof(double);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= bytes[i];
            h *= 0x100000001b3ull;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

void write_checkpoint(const CheckpointData& ckpt, const std::string& path) {
    nlohmann::ordered_json manifest;
    manifest["version"] = kCheckpointVersion;
    manifest["config"] = config_to_json(ckpt.config);
    manifest["step"] = ckpt.step;
    manifest["epoch"] = ckpt.epoch;
    manifest["completed_stages"] = ckpt.completed_stages;
    manifest["last_unload_step"] = ckpt.last_unload_step;
    manifest["optim_step"] = ckpt.optim_step;
    manifest["counters"] = {{"forwards", ckpt.counters.forwards},
                            {"backwards", ckpt.counters.backwards},
                            {"optim_steps", ckpt.counters.optim_steps},
                            {"eval_forwards", ckpt.counters.eval_forwards}};
    manifest["rng"] = {{"seed", ckpt.rng_seed}, {"counter", ckpt.rng_counter}};
    manifest["initial_digest"] = ckpt.initial_digest;

    nlohmann::ordered_json dir = nlohmann::ordered_json::array();
    std::uint64_t offset = 0;
    for (const NamedTensor& t : ckpt.tensors) {
        const std::uint64_t len = t.value.size() * sizeof(double);
        dir.push_back({{"name", t.name},
                       {"rows", t.value.rows()},
                       {"cols", t.value.cols()},
                       {"offset", offset},
                       {"len", len}});
        offset += len;
    }
    manifest["tensors"] = dir;

    const std::string mjson = manifest.dump();
    std::string header;
    header.append(kMagic, 4);
    put_u32(header, kCheckpointVersion);
    put_u32(header, static_cast<std::uint32_t>(mjson.size()));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write checkpoint: " + path);
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    out.write(mjson.data(), static_cast<std::streamsize>(mjson.size()));
    for (const NamedTensor& t : ckpt.tensors) {
        out.write(reinterpret_cast<const char*>(t.value.data()),
                  static_cast<std::streamsize>(t.value.size() * sizeof(double)));
    }
    if (!out.flush()) throw IoError("failed writing checkpoint: " + path);
}

CheckpointData read_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read checkpoint: " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (buf.size() < 12 || std::memcmp(buf.data(), kMagic, 4) != 0) {
        throw IoError("not a checkpoint file (bad magic): " + path);
    }
    const std::uint32_t version = get_u32(buf, 4);
    if (version != kCheckpointVersion) {
        throw IoError("checkpoint version mismatch: file has " + std::to_string(version) + ", expected " +
                      std::to_string(kCheckpointVersion));
    }
    const std::uint32_t mlen = get_u32(buf, 8);
    if (buf.size() < 12 + static_cast<std::size_t>(mlen)) {
        throw IoError("checkpoint manifest truncated: " + path);
    }
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(buf.substr(12, mlen));
    } catch (const nlohmann::json::exception& e) {
        throw IoError("checkpoint manifest is not valid JSON: " + std::string(e.what()));
    }

    CheckpointData ckpt;
    try {
        ckpt.config = config_from_json(manifest.at("config"));
        ckpt.step = manifest.at("step").get<long>();
        ckpt.epoch = manifest.at("epoch").get<long>();
        ckpt.completed_stages = manifest.at("completed_stages").get<int>();
        ckpt.last_unload_step = manifest.at("last_unload_step").get<long>();
        ckpt.optim_step = manifest.at("optim_step").get<long>();
        const auto& c = manifest.at("counters");
        ckpt.counters.forwards = c.at("forwards").get<long>();
        ckpt.counters.backwards = c.at("backwards").get<long>();
        ckpt.counters.optim_steps = c.at("optim_steps").get<long>();
        ckpt.counters.eval_forwards = c.at("eval_forwards").get<long>();
        ckpt.rng_seed = manifest.at("rng").at("seed").get<std::uint64_t>();
        ckpt.rng_counter = manifest.at("rng").at("counter").get<std::uint64_t>();
        ckpt.initial_digest = manifest.at("initial_digest").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError("checkpoint manifest missing fields: " + std::string(e.what()));
    }

    const std::size_t blob_start = 12 + mlen;
    const std::size_t blob_size = buf.size() - blob_start;
    for (const auto& entry : manifest.at("tensors")) {
        const std::string name = entry.at("name").get<std::string>();
        const std::size_t rows = entry.at("rows").get<std::size_t>();
        const std::size_t cols = entry.at("cols").get<std::size_t>();
        const std::uint64_t offset = entry.at("offset").get<std::uint64_t>();
        const std::uint64_t len = entry.at("len").get<std::uint64_t>();
        if (len != rows * cols * sizeof(double)) {
            throw IoError("tensor '" + name + "' length " + std::to_string(len) + " does not match shape " +
                          std::to_string(rows) + "x" + std::to_string(cols));
        }
        if (offset + len > blob_size) {
            throw IoError("tensor '" + name + "' exceeds checkpoint blob region");
        }
        std::vector<double> data(rows * cols);
        std::memcpy(data.data(), buf.data() + blob_start + offset, len);
        Matrix value(rows, cols, std::move(data));
        if (!value.is_finite()) {
            throw IoError("tensor '" + name + "' contains non-finite entries");
        }
        ckpt.tensors.push_back({name, std::move(value)});
    }
    return ckpt;
}

} // namespace plora
