#include "voxelaug/nifti.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include <zlib.h>

namespace voxelaug::nifti {
namespace {

constexpr std::size_t kHeaderSize = 348;
constexpr std::size_t kVoxOffset = 352;

enum Datatype : std::int16_t {
    kUint8 = 2,
    kInt16 = 4,
    kInt32 = 8,
    kFloat32 = 16,
    kFloat64 = 64,
    kInt8 = 256,
    kUint16 = 512,
    kUint32 = 768,
    kInt64 = 1024,
    kUint64 = 1280,
};

// Header field offsets.
namespace off {
constexpr std::size_t sizeof_hdr = 0;
constexpr std::size_t dim = 40;
constexpr std::size_t datatype = 70;
constexpr std::size_t bitpix = 72;
constexpr std::size_t pixdim = 76;
constexpr std::size_t vox_offset = 108;
constexpr std::size_t scl_slope = 112;
constexpr std::size_t scl_inter = 116;
constexpr std::size_t xyzt_units = 123;
constexpr std::size_t descrip = 148;
constexpr std::size_t qform_code = 252;
constexpr std::size_t sform_code = 254;
constexpr std::size_t quatern_b = 256;
constexpr std::size_t qoffset_x = 268;
constexpr std::size_t srow_x = 280;
constexpr std::size_t magic = 344;
}  // namespace off

static_assert(std::endian::native == std::endian::little,
              "NIfTI writer assumes a little-endian host");

std::vector<unsigned char> read_all(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) {
        throw ParseError("no such file: " + path.string());
    }
    // gzread passes uncompressed files through unchanged.
    gzFile file = gzopen(path.string().c_str(), "rb");
    if (file == nullptr) {
        throw ParseError("cannot open " + path.string());
    }
    std::vector<unsigned char> bytes;
    std::vector<unsigned char> chunk(1 << 20);
    for (;;) {
        const int n = gzread(file, chunk.data(), static_cast<unsigned>(chunk.size()));
        if (n < 0) {
            gzclose(file);
            throw ParseError("corrupt compressed stream in " + path.string());
        }
        if (n == 0) {
            break;
        }
        bytes.insert(bytes.end(), chunk.begin(), chunk.begin() + n);
    }
    gzclose(file);
    return bytes;
}

class HeaderReader {
public:
    HeaderReader(const std::vector<unsigned char>& bytes, bool swap) : bytes_(bytes), swap_(swap) {}

    template <typename T>
    T get(std::size_t offset) const {
        T value;
        std::memcpy(&value, bytes_.data() + offset, sizeof(T));
        if (swap_) {
            value = swap_bytes(value);
        }
        return value;
    }

    template <typename T>
    static T swap_bytes(T value) {
        unsigned char raw[sizeof(T)];
        std::memcpy(raw, &value, sizeof(T));
        for (std::size_t n = 0; n < sizeof(T) / 2; ++n) {
            std::swap(raw[n], raw[sizeof(T) - 1 - n]);
        }
        std::memcpy(&value, raw, sizeof(T));
        return value;
    }

private:
    const std::vector<unsigned char>& bytes_;
    bool swap_;
};

struct Decoded {
    Geometry geometry;
    std::vector<double> values;
};

std::size_t datatype_size(std::int16_t datatype) {
    switch (datatype) {
        case kUint8:
        case kInt8:
            return 1;
        case kInt16:
        case kUint16:
            return 2;
        case kInt32:
        case kUint32:
        case kFloat32:
            return 4;
        case kInt64:
        case kUint64:
        case kFloat64:
            return 8;
        default:
            return 0;
    }
}

template <typename T>
void convert(const unsigned char* src, std::size_t count, bool swap, std::vector<double>& out) {
    out.resize(count);
    for (std::size_t n = 0; n < count; ++n) {
        T v;
        std::memcpy(&v, src + n * sizeof(T), sizeof(T));
        if (swap) {
            v = HeaderReader::swap_bytes(v);
        }
        out[n] = static_cast<double>(v);
    }
}

Affine quaternion_affine(const HeaderReader& h, const Spacing& spacing) {
    const double b = h.get<float>(off::quatern_b);
    const double c = h.get<float>(off::quatern_b + 4);
    const double d = h.get<float>(off::quatern_b + 8);
    double a = 1.0 - (b * b + c * c + d * d);
    a = a > 1e-7 ? std::sqrt(a) : 0.0;
    double qfac = h.get<float>(off::pixdim);
    qfac = qfac < 0.0 ? -1.0 : 1.0;

    Eigen::Matrix3d r;
    r << a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c),
        2 * (b * c + a * d), a * a + c * c - b * b - d * d, 2 * (c * d - a * b),
        2 * (b * d - a * c), 2 * (c * d + a * b), a * a + d * d - c * c - b * b;

    Affine m = Affine::Identity();
    m.col(0).head<3>() = r.col(0) * spacing[0];
    m.col(1).head<3>() = r.col(1) * spacing[1];
    m.col(2).head<3>() = r.col(2) * spacing[2] * qfac;
    m(0, 3) = h.get<float>(off::qoffset_x);
    m(1, 3) = h.get<float>(off::qoffset_x + 4);
    m(2, 3) = h.get<float>(off::qoffset_x + 8);
    return m;
}

Decoded decode(const std::filesystem::path& path) {
    const auto bytes = read_all(path);
    if (bytes.size() < kHeaderSize) {
        throw ParseError(path.string() + ": file shorter than a NIfTI-1 header");
    }
    std::int32_t sizeof_hdr;
    std::memcpy(&sizeof_hdr, bytes.data() + off::sizeof_hdr, 4);
    bool swap = false;
    if (sizeof_hdr != static_cast<std::int32_t>(kHeaderSize)) {
        if (HeaderReader::swap_bytes(sizeof_hdr) != static_cast<std::int32_t>(kHeaderSize)) {
            throw ParseError(path.string() + ": not a NIfTI-1 header (sizeof_hdr mismatch)");
        }
        swap = true;
    }
    const HeaderReader h(bytes, swap);
    if (std::memcmp(bytes.data() + off::magic, "n+1\0", 4) != 0) {
        throw ParseError(path.string() + ": missing single-file NIfTI-1 magic 'n+1'");
    }

    const auto ndim = h.get<std::int16_t>(off::dim);
    if (ndim < 1 || ndim > 7) {
        throw ParseError(path.string() + ": dim[0] out of range");
    }
    if (ndim < 3) {
        throw DimensionalityError(path.string() + ": image has " + std::to_string(ndim) +
                                  " dimensions, expected 3");
    }
    Dims dims{};
    for (int a = 0; a < 3; ++a) {
        dims[static_cast<std::size_t>(a)] = h.get<std::int16_t>(off::dim + 2 * (a + 1));
        if (dims[static_cast<std::size_t>(a)] < 1) {
            throw ParseError(path.string() + ": non-positive dim entry");
        }
    }
    for (int a = 4; a <= ndim; ++a) {
        if (h.get<std::int16_t>(off::dim + 2 * a) > 1) {
            throw DimensionalityError(path.string() + ": image is not a single 3D volume");
        }
    }

    const auto datatype = h.get<std::int16_t>(off::datatype);
    const std::size_t elem = datatype_size(datatype);
    if (elem == 0) {
        throw UnsupportedFormatError(path.string() + ": unsupported NIfTI datatype " +
                                     std::to_string(datatype));
    }

    Spacing spacing{};
    for (int a = 0; a < 3; ++a) {
        const double s = std::abs(h.get<float>(off::pixdim + 4 * (a + 1)));
        spacing[static_cast<std::size_t>(a)] = (s > 0.0 && std::isfinite(s)) ? s : 1.0;
    }

    Affine affine = Affine::Identity();
    const auto sform_code = h.get<std::int16_t>(off::sform_code);
    const auto qform_code = h.get<std::int16_t>(off::qform_code);
    if (sform_code > 0) {
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 4; ++c) {
                affine(r, c) = h.get<float>(off::srow_x + 16 * r + 4 * c);
            }
        }
        // Spacing follows the sform, which may disagree with pixdim.
        for (int a = 0; a < 3; ++a) {
            const double norm = affine.col(a).head<3>().norm();
            if (norm > 0.0 && std::isfinite(norm)) {
                spacing[static_cast<std::size_t>(a)] = norm;
            }
        }
    } else if (qform_code > 0) {
        affine = quaternion_affine(h, spacing);
    } else {
        for (int a = 0; a < 3; ++a) {
            affine(a, a) = spacing[static_cast<std::size_t>(a)];
        }
    }

    const double vox_offset = h.get<float>(off::vox_offset);
    if (!(vox_offset >= static_cast<double>(kHeaderSize)) || vox_offset != std::floor(vox_offset)) {
        throw ParseError(path.string() + ": invalid vox_offset");
    }
    Geometry geometry;
    geometry.dims = dims;
    geometry.spacing = spacing;
    geometry.affine = affine;
    try {
        geometry.validate();
    } catch (const ArgumentError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }

    const std::size_t count = geometry.voxel_count();
    const auto start = static_cast<std::size_t>(vox_offset);
    if (bytes.size() < start || bytes.size() - start < count * elem) {
        throw ParseError(path.string() + ": truncated voxel data");
    }
    const unsigned char* src = bytes.data() + start;
    Decoded out{geometry, {}};
    switch (datatype) {
        case kUint8: convert<std::uint8_t>(src, count, swap, out.values); break;
        case kInt8: convert<std::int8_t>(src, count, swap, out.values); break;
        case kInt16: convert<std::int16_t>(src, count, swap, out.values); break;
        case kUint16: convert<std::uint16_t>(src, count, swap, out.values); break;
        case kInt32: convert<std::int32_t>(src, count, swap, out.values); break;
        case kUint32: convert<std::uint32_t>(src, count, swap, out.values); break;
        case kInt64: convert<std::int64_t>(src, count, swap, out.values); break;
        case kUint64: convert<std::uint64_t>(src, count, swap, out.values); break;
        case kFloat32: convert<float>(src, count, swap, out.values); break;
        case kFloat64: convert<double>(src, count, swap, out.values); break;
        default: break;
    }

    const double slope = h.get<float>(off::scl_slope);
    const double inter = h.get<float>(off::scl_inter);
    if (slope != 0.0 && std::isfinite(slope) && std::isfinite(inter) &&
        !(slope == 1.0 && inter == 0.0)) {
        for (double& v : out.values) {
            v = v * slope + inter;
        }
    }
    return out;
}

class HeaderWriter {
public:
    HeaderWriter() : bytes_(kVoxOffset, 0) {}

    template <typename T>
    void put(std::size_t offset, T value) {
        std::memcpy(bytes_.data() + offset, &value, sizeof(T));
    }

    void put_bytes(std::size_t offset, const void* src, std::size_t n) {
        std::memcpy(bytes_.data() + offset, src, n);
    }

    [[nodiscard]] const std::vector<unsigned char>& bytes() const { return bytes_; }

private:
    std::vector<unsigned char> bytes_;
};

HeaderWriter make_header(const Geometry& g, std::int16_t datatype, std::int16_t bitpix) {
    HeaderWriter h;
    h.put<std::int32_t>(off::sizeof_hdr, static_cast<std::int32_t>(kHeaderSize));
    const std::int16_t dim[8] = {3,
                                 static_cast<std::int16_t>(g.dims[0]),
                                 static_cast<std::int16_t>(g.dims[1]),
                                 static_cast<std::int16_t>(g.dims[2]),
                                 1, 1, 1, 1};
    for (int n = 0; n < 8; ++n) {
        h.put<std::int16_t>(off::dim + 2 * static_cast<std::size_t>(n), dim[n]);
    }
    h.put<std::int16_t>(off::datatype, datatype);
    h.put<std::int16_t>(off::bitpix, bitpix);

    // Quaternion of the nearest proper rotation; a reflection goes into qfac.
    Eigen::Matrix3d dir = g.affine.topLeftCorner<3, 3>();
    for (int a = 0; a < 3; ++a) {
        const double n = dir.col(a).norm();
        dir.col(a) /= n;
    }
    double qfac = 1.0;
    if (dir.determinant() < 0.0) {
        qfac = -1.0;
        dir.col(2) = -dir.col(2);
    }
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(dir, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Matrix3d rot = svd.matrixU() * svd.matrixV().transpose();
    Eigen::Quaterniond q(rot);
    if (q.w() < 0.0) {
        q.coeffs() = -q.coeffs();
    }

    h.put<float>(off::pixdim, static_cast<float>(qfac));
    for (int a = 0; a < 3; ++a) {
        h.put<float>(off::pixdim + 4 * static_cast<std::size_t>(a + 1),
                     static_cast<float>(g.spacing[static_cast<std::size_t>(a)]));
    }
    for (int a = 4; a < 8; ++a) {
        h.put<float>(off::pixdim + 4 * static_cast<std::size_t>(a), 1.0f);
    }
    h.put<float>(off::vox_offset, static_cast<float>(kVoxOffset));
    h.put<float>(off::scl_slope, 1.0f);
    h.put<float>(off::scl_inter, 0.0f);
    h.put<char>(off::xyzt_units, 2);  // mm
    const char descrip[] = "voxelaug";
    h.put_bytes(off::descrip, descrip, sizeof(descrip));
    h.put<std::int16_t>(off::qform_code, 1);
    h.put<std::int16_t>(off::sform_code, 1);
    h.put<float>(off::quatern_b, static_cast<float>(q.x()));
    h.put<float>(off::quatern_b + 4, static_cast<float>(q.y()));
    h.put<float>(off::quatern_b + 8, static_cast<float>(q.z()));
    for (int r = 0; r < 3; ++r) {
        h.put<float>(off::qoffset_x + 4 * static_cast<std::size_t>(r),
                     static_cast<float>(g.affine(r, 3)));
        for (int c = 0; c < 4; ++c) {
            h.put<float>(off::srow_x + 16 * static_cast<std::size_t>(r) + 4 * static_cast<std::size_t>(c),
                         static_cast<float>(g.affine(r, c)));
        }
    }
    h.put_bytes(off::magic, "n+1\0", 4);
    return h;
}

bool wants_gzip(const std::filesystem::path& path) {
    return path.extension() == ".gz";
}

void write_file(const std::filesystem::path& path, const std::vector<unsigned char>& header,
                const void* data, std::size_t nbytes) {
    const auto parent = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    if (!std::filesystem::is_directory(parent)) {
        throw WriteError("cannot write " + path.string() + ": parent directory does not exist");
    }
    if (wants_gzip(path)) {
        gzFile file = gzopen(path.string().c_str(), "wb6");
        if (file == nullptr) {
            throw WriteError("cannot open " + path.string() + " for writing");
        }
        bool ok = gzwrite(file, header.data(), static_cast<unsigned>(header.size())) ==
                  static_cast<int>(header.size());
        const auto* p = static_cast<const unsigned char*>(data);
        std::size_t left = nbytes;
        while (ok && left > 0) {
            const auto n = static_cast<unsigned>(std::min<std::size_t>(left, 1u << 30));
            ok = gzwrite(file, p, n) == static_cast<int>(n);
            p += n;
            left -= n;
        }
        if (gzclose(file) != Z_OK || !ok) {
            throw WriteError("failed writing " + path.string());
        }
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw WriteError("cannot open " + path.string() + " for writing");
    }
    out.write(reinterpret_cast<const char*>(header.data()), static_cast<std::streamsize>(header.size()));
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(nbytes));
    if (!out) {
        throw WriteError("failed writing " + path.string());
    }
}

void check_dims_fit(const Geometry& g) {
    for (int d : g.dims) {
        if (d > 32767) {
            throw WriteError("NIfTI-1 cannot store an axis longer than 32767 voxels");
        }
    }
}

}  // namespace

Volume load_volume(const std::filesystem::path& path) {
    auto decoded = decode(path);
    std::vector<float> voxels(decoded.values.size());
    for (std::size_t n = 0; n < voxels.size(); ++n) {
        voxels[n] = static_cast<float>(decoded.values[n]);
    }
    return Volume(decoded.geometry, std::move(voxels));
}

LabelMap load_labels(const std::filesystem::path& path) {
    auto decoded = decode(path);
    std::vector<std::uint8_t> voxels(decoded.values.size());
    for (std::size_t n = 0; n < voxels.size(); ++n) {
        const double v = decoded.values[n];
        if (!(v >= 0.0 && v <= 255.0) || v != std::floor(v)) {
            throw DataError(path.string() + ": label value " + std::to_string(v) +
                            " is not an integer in [0, 255]");
        }
        voxels[n] = static_cast<std::uint8_t>(v);
    }
    return LabelMap(decoded.geometry, std::move(voxels));
}

void save(const Volume& volume, const std::filesystem::path& path) {
    check_dims_fit(volume.geometry());
    const auto header = make_header(volume.geometry(), kFloat32, 32);
    write_file(path, header.bytes(), volume.voxels().data(), volume.size() * sizeof(float));
}

void save(const LabelMap& labels, const std::filesystem::path& path) {
    check_dims_fit(labels.geometry());
    const auto header = make_header(labels.geometry(), kUint8, 8);
    write_file(path, header.bytes(), labels.voxels().data(), labels.size());
}

std::string stem(const std::filesystem::path& path) {
    std::string name = path.filename().string();
    for (const std::string suffix : {".nii.gz", ".nii"}) {
        if (name.size() > suffix.size() &&
            name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
            return name.substr(0, name.size() - suffix.size());
        }
    }
    return name;
}

bool is_nifti_path(const std::filesystem::path& path) {
    return stem(path) != path.filename().string();
}

}  // namespace voxelaug::nifti
