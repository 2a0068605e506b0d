#include "qdouble/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "qdouble/error.hpp"

namespace qdouble {

namespace {

std::string point_str(GridPoint p) {
    std::ostringstream os;
    os << "(" << p.x << "," << p.y << ")";
    return os.str();
}

std::string edge_str(const GridEdge& e) {
    std::ostringstream os;
    os << (e.vertical ? "v" : "h") << "(" << e.x << "," << e.y << ")";
    return os.str();
}

// Edges of face f in counterclockwise order from its lower-left corner,
// with the corner each one leaves from.
struct FaceCycle {
    GridEdge edge[4];
    bool forward[4];
    GridPoint corner[4];
};

FaceCycle face_cycle(GridPoint f) {
    const int i = f.x, j = f.y;
    return {{h_edge(i, j), v_edge(i + 1, j), h_edge(i, j + 1), v_edge(i, j)},
            {true, true, false, false},
            {{i, j}, {i + 1, j}, {i + 1, j + 1}, {i, j + 1}}};
}

// The two faces on either side of an edge: (left/below, right/above).
std::pair<GridPoint, GridPoint> faces_of(const GridEdge& e) {
    if (e.vertical) return {{e.x - 1, e.y}, {e.x, e.y}};
    return {{e.x, e.y - 1}, {e.x, e.y}};
}

bool incident(const GridEdge& e, GridPoint v) { return e.tail() == v || e.head() == v; }

}  // namespace

// ---- patch ----

LatticePatch::LatticePatch(GroupPtr g, std::vector<GridEdge> edges, std::optional<BoundarySpec> boundary, Site s0,
                           Site s1, PatchOptions options, std::string label)
    : group_(std::move(g)), label_(std::move(label)), boundary_(std::move(boundary)), s0_(s0), s1_(s1),
      options_(options) {
    if (!group_) throw Error(ErrorKind::InvalidInput, "patch needs a group");
    std::sort(edges.begin(), edges.end(), [](const GridEdge& a, const GridEdge& b) {
        return std::tie(a.y, a.vertical, a.x) < std::tie(b.y, b.vertical, b.x);
    });
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (edges.empty()) throw Error(ErrorKind::InvalidInput, "patch has no edges");
    edges_ = std::move(edges);

    if (boundary_) {
        if (!boundary_->k.parent || !boundary_->k.parent->same_table(*group_))
            throw Error(ErrorKind::SubgroupMismatch, "boundary subgroup belongs to a different group");
        if (!boundary_->phi.group || !boundary_->phi.group->same_table(*boundary_->k.as_group))
            throw Error(ErrorKind::SubgroupMismatch, "boundary cocycle is not defined on the subgroup");
        if (!check_normalized(boundary_->phi).all()) boundary_->phi = normalize(boundary_->phi).cocycle;
        for (const cd& z : boundary_->phi.table)
            if (std::abs(z - cd(1.0)) > 1e-12) trivial_phi_ = false;
        if (s0_.vertex.y != 0 || s0_.face != GridPoint{s0_.vertex.x, -1})
            throw Error(ErrorKind::InvalidInput, "boundary site s0 must sit on the wall, left end of its edge");
    }

    const int n = group_->order();
    for (const GridEdge& e : edges_) {
        if (e.y < 0) throw Error(ErrorKind::InvalidInput, "edge " + edge_str(e) + " lies below the wall");
        if (boundary_ && !e.vertical && e.y == 0) {
            const int parity = ((e.x - s0_.vertex.x) % 2 + 2) % 2;
            marks_.push_back(parity == 0 ? EdgeMark::Solid : EdgeMark::Dotted);
            dims_.push_back(boundary_->k.order());
        } else {
            marks_.push_back(EdgeMark::Bulk);
            dims_.push_back(n);
        }
    }
    strides_.resize(edges_.size());
    dimension_ = 1;
    for (size_t e = 0; e < edges_.size(); ++e) {
        strides_[e] = dimension_;
        if (dimension_ > kMaxAmplitudes / dims_[e]) {
            std::ostringstream os;
            os << "state space of " << edges_.size() << " edges exceeds " << kMaxAmplitudes << " amplitudes";
            throw Error(ErrorKind::DimensionCap, os.str());
        }
        dimension_ *= dims_[e];
    }
    if (!site_valid(s0_)) throw Error(ErrorKind::InvalidInput, "site s0 is not a vertex-face pair of the patch");
    if (!site_valid(s1_)) throw Error(ErrorKind::InvalidInput, "site s1 is not a vertex-face pair of the patch");
    if (label_.empty()) {
        std::ostringstream os;
        os << group_->label() << ", " << edges_.size() << " edges";
        if (boundary_) os << ", K of order " << boundary_->k.order();
        label_ = os.str();
    }
}

int LatticePatch::edge_index(const GridEdge& e) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e, [](const GridEdge& a, const GridEdge& b) {
        return std::tie(a.y, a.vertical, a.x) < std::tie(b.y, b.vertical, b.x);
    });
    if (it == edges_.end() || *it != e) return -1;
    return static_cast<int>(it - edges_.begin());
}

const Subgroup& LatticePatch::subgroup() const {
    if (!boundary_) throw Error(ErrorKind::InvalidInput, "patch has no boundary");
    return boundary_->k;
}

const TwoCocycle& LatticePatch::cocycle() const {
    if (!boundary_) throw Error(ErrorKind::InvalidInput, "patch has no boundary");
    return boundary_->phi;
}

int LatticePatch::element(int e, int local) const {
    return is_wall_edge(e) ? boundary_->k.embed(local) : local;
}

int LatticePatch::local_index(int e, int element) const {
    return is_wall_edge(e) ? boundary_->k.index_of(element) : element;
}

std::vector<int> LatticePatch::configuration(long long index) const {
    std::vector<int> out(edges_.size());
    for (size_t e = 0; e < edges_.size(); ++e) {
        out[e] = element(static_cast<int>(e), static_cast<int>(index % dims_[e]));
        index /= dims_[e];
    }
    return out;
}

long long LatticePatch::index_of(const std::vector<int>& elements) const {
    if (elements.size() != edges_.size()) throw Error(ErrorKind::SizeMismatch, "configuration has the wrong length");
    long long idx = 0;
    for (size_t e = 0; e < edges_.size(); ++e) {
        const int l = local_index(static_cast<int>(e), elements[e]);
        if (l < 0) throw Error(ErrorKind::NotInSubgroup, "wall edge value outside K");
        idx += l * strides_[e];
    }
    return idx;
}

std::vector<int> LatticePatch::star(GridPoint v) const {
    std::vector<int> out;
    for (const GridEdge& e : {h_edge(v.x - 1, v.y), h_edge(v.x, v.y), v_edge(v.x, v.y - 1), v_edge(v.x, v.y)}) {
        const int i = edge_index(e);
        if (i >= 0) out.push_back(i);
    }
    return out;
}

bool LatticePatch::vertex_complete(GridPoint v) const {
    if (is_wall_vertex(v))
        return edge_index(h_edge(v.x - 1, 0)) >= 0 && edge_index(h_edge(v.x, 0)) >= 0 &&
               edge_index(v_edge(v.x, 0)) >= 0;
    return star(v).size() == 4;
}

bool LatticePatch::face_complete(GridPoint f) const {
    if (f.y < 0) return false;
    const FaceCycle c = face_cycle(f);
    for (const GridEdge& e : c.edge)
        if (edge_index(e) < 0) return false;
    return true;
}

bool LatticePatch::is_outer_face(GridPoint f) const {
    return has_boundary() && f.y == -1 && edge_index(h_edge(f.x, 0)) >= 0;
}

bool LatticePatch::site_valid(const Site& s) const {
    if (is_outer_face(s.face)) return s.vertex == GridPoint{s.face.x, 0} || s.vertex == GridPoint{s.face.x + 1, 0};
    if (!face_complete(s.face)) return false;
    const FaceCycle c = face_cycle(s.face);
    return std::find(std::begin(c.corner), std::end(c.corner), s.vertex) != std::end(c.corner);
}

namespace {

std::set<GridPoint> all_vertices(const LatticePatch& p) {
    std::set<GridPoint> vs;
    for (const GridEdge& e : p.edges()) {
        vs.insert(e.tail());
        vs.insert(e.head());
    }
    return vs;
}

}  // namespace

std::vector<GridPoint> LatticePatch::internal_vertices() const {
    std::vector<GridPoint> out;
    for (GridPoint v : all_vertices(*this))
        if (!is_wall_vertex(v) && vertex_complete(v)) out.push_back(v);
    return out;
}

std::vector<GridPoint> LatticePatch::wall_vertices() const {
    std::vector<GridPoint> out;
    for (GridPoint v : all_vertices(*this))
        if (is_wall_vertex(v) && vertex_complete(v)) out.push_back(v);
    return out;
}

std::vector<GridPoint> LatticePatch::rim_vertices() const {
    std::vector<GridPoint> out;
    for (GridPoint v : all_vertices(*this))
        if (!is_wall_vertex(v) && !vertex_complete(v)) out.push_back(v);
    return out;
}

std::vector<GridPoint> LatticePatch::faces() const {
    std::set<GridPoint> cand;
    for (const GridEdge& e : edges_) {
        auto [a, b] = faces_of(e);
        cand.insert(a);
        cand.insert(b);
    }
    std::vector<GridPoint> out;
    for (GridPoint f : cand)
        if (face_complete(f)) out.push_back(f);
    return out;
}

// ---- builders ----

PatchPtr build_patch(const GroupPtr& g, int width, int height, std::optional<BoundarySpec> boundary,
                     PatchOptions options) {
    if (width < 1 || height < 1) throw Error(ErrorKind::InvalidInput, "patch needs positive width and height");
    const long long edges = static_cast<long long>(width) * (height + 1) + static_cast<long long>(width + 1) * height;
    if (edges > 64) throw Error(ErrorKind::DimensionCap, "patch has " + std::to_string(edges) + " edges");
    std::vector<GridEdge> es;
    for (int y = 0; y <= height; ++y)
        for (int x = 0; x < width; ++x) es.push_back(h_edge(x, y));
    for (int y = 0; y < height; ++y)
        for (int x = 0; x <= width; ++x) es.push_back(v_edge(x, y));
    Site s0, s1;
    if (boundary) {
        if (width < 2 || height < 2)
            throw Error(ErrorKind::InvalidInput, "a boundary patch needs at least 2 x 2 faces");
        s0 = {{1, 0}, {1, -1}};
        s1 = {{1, 1}, {1, 0}};
    } else {
        if (width < 3 || height < 2) throw Error(ErrorKind::InvalidInput, "a bulk patch needs at least 3 x 2 faces");
        s0 = {{1, 1}, {0, 0}};
        s1 = {{2, 1}, {1, 0}};
    }
    return std::make_shared<const LatticePatch>(g, std::move(es), std::move(boundary), s0, s1, options);
}

PatchPtr minimal_boundary_patch(const GroupPtr& g, BoundarySpec boundary) {
    std::vector<GridEdge> es = {h_edge(0, 0), h_edge(1, 0), v_edge(1, 0), v_edge(2, 0),
                                h_edge(1, 1), h_edge(0, 1), v_edge(1, 1)};
    return std::make_shared<const LatticePatch>(g, std::move(es), std::move(boundary), Site{{1, 0}, {1, -1}},
                                                Site{{1, 1}, {1, 0}});
}

PatchPtr path_independence_patch(const GroupPtr& g) {
    std::vector<GridEdge> es = {h_edge(0, 0), h_edge(0, 1), h_edge(1, 0), h_edge(1, 1), h_edge(2, 0), h_edge(2, 1),
                                h_edge(1, 2), h_edge(2, 2), h_edge(0, 2), v_edge(0, 0), v_edge(1, 0), v_edge(2, 0),
                                v_edge(3, 0), v_edge(1, 1), v_edge(2, 1), v_edge(3, 1), v_edge(1, 2), v_edge(2, 2)};
    return std::make_shared<const LatticePatch>(g, std::move(es), std::nullopt, Site{{1, 1}, {0, 0}},
                                                Site{{2, 2}, {2, 1}});
}

// ---- states and operators ----

LatticeState random_state(const PatchPtr& patch, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    LatticeState s{patch, Eigen::VectorXcd(patch->dimension())};
    for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i) s.amplitudes[i] = cd(nd(rng), nd(rng));
    s.amplitudes.normalize();
    return s;
}

MonomialOp::MonomialOp(const PatchPtr& patch, std::vector<int> support, const Kernel& kernel)
    : patch_(patch), support_(std::move(support)) {
    long long configs = 1;
    for (int e : support_) {
        strides_.push_back(patch_->stride(e));
        dims_.push_back(patch_->dim(e));
        configs *= patch_->dim(e);
        if (configs > kMaxAmplitudes) throw Error(ErrorKind::DimensionCap, "operator support too large");
    }
    delta_.assign(configs, 0);
    phase_.assign(configs, cd(0.0));
    const size_t m = support_.size();
    std::vector<int> local(m), values(m);
    for (long long c = 0; c < configs; ++c) {
        long long rest = c;
        for (size_t j = 0; j < m; ++j) {
            local[j] = static_cast<int>(rest % dims_[j]);
            rest /= dims_[j];
            values[j] = patch_->element(support_[j], local[j]);
        }
        cd ph = 1.0;
        if (!kernel(values, ph)) continue;
        long long delta = 0;
        bool ok = true;
        for (size_t j = 0; j < m; ++j) {
            const int l = patch_->local_index(support_[j], values[j]);
            if (l < 0) {
                ok = false;
                break;
            }
            delta += (static_cast<long long>(l) - local[j]) * strides_[j];
        }
        if (!ok) continue;
        delta_[c] = delta;
        phase_[c] = ph;
    }

    // runs of consecutive edges off the support merge into one axis
    std::vector<char> on(patch_->edge_count(), 0);
    for (int e : support_) on[e] = 1;
    for (int e = 0; e < patch_->edge_count(); ++e) {
        if (on[e]) continue;
        if (e > 0 && !on[e - 1] && !axes_.empty()) axes_.back().length *= patch_->dim(e);
        else axes_.push_back({patch_->stride(e), patch_->dim(e)});
    }
}

namespace {

// o += p * a without the NaN-recovery path of std::complex multiplication
inline void fma_into(cd& o, cd p, cd a) {
    const double re = p.real() * a.real() - p.imag() * a.imag();
    const double im = p.real() * a.imag() + p.imag() * a.real();
    o = cd(o.real() + re, o.imag() + im);
}

}  // namespace

void MonomialOp::apply_add(const Eigen::VectorXcd& in, Eigen::VectorXcd& out, cd coeff) const {
    // For a fixed support configuration the shift is constant, so sweep the free
    // axes as strided runs instead of scattering amplitude by amplitude.
    const cd* src = in.data();
    cd* dst = out.data();
    const size_t m = support_.size();
    const size_t na = axes_.size();
    std::vector<int> sdig(m, 0), fdig(na, 0);
    long long sbase = 0;
    const long long configs = static_cast<long long>(phase_.size());
    for (long long c = 0; c < configs; ++c) {
        const cd ph = phase_[c] * coeff;
        if (phase_[c] != cd(0.0)) {
            const long long d = delta_[c];
            if (na == 0) {
                fma_into(dst[sbase + d], ph, src[sbase]);
            } else {
                const long long s0 = axes_[0].stride, n0 = axes_[0].length;
                std::fill(fdig.begin(), fdig.end(), 0);
                long long off = sbase;
                while (true) {
                    const cd* a = src + off;
                    cd* o = dst + off + d;
                    for (long long t = 0; t < n0; ++t) fma_into(o[t * s0], ph, a[t * s0]);
                    size_t k = 1;
                    for (; k < na; ++k) {
                        if (++fdig[k] < axes_[k].length) {
                            off += axes_[k].stride;
                            break;
                        }
                        off -= axes_[k].stride * (axes_[k].length - 1);
                        fdig[k] = 0;
                    }
                    if (k == na) break;
                }
            }
        }
        for (size_t j = 0; j < m; ++j) {
            if (++sdig[j] < dims_[j]) {
                sbase += strides_[j];
                break;
            }
            sbase -= strides_[j] * (dims_[j] - 1);
            sdig[j] = 0;
        }
    }
}

LatticeOperator& LatticeOperator::add(std::shared_ptr<const MonomialOp> op, cd coeff) {
    terms_.emplace_back(coeff, std::move(op));
    return *this;
}

LatticeOperator& LatticeOperator::add(const LatticeOperator& other, cd coeff) {
    for (const auto& [c, op] : other.terms_) terms_.emplace_back(coeff * c, op);
    return *this;
}

Eigen::VectorXcd LatticeOperator::apply(const Eigen::VectorXcd& v) const {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
    for (const auto& [c, op] : terms_) op->apply_add(v, out, c);
    return out;
}

namespace {

int k_local(const LatticePatch& p, int k) {
    const int l = p.subgroup().index_of(k);
    if (l < 0) throw Error(ErrorKind::NotInSubgroup, "element " + p.group()->element_label(k) + " is not in K");
    return l;
}

}  // namespace

LatticeOperator vertex_op(const PatchPtr& patch, GridPoint v, int g) {
    if (patch->is_wall_vertex(v)) return boundary_vertex_op(patch, v, g);
    const GroupTable& G = *patch->group();
    if (g < 0 || g >= G.order()) throw Error(ErrorKind::InvalidInput, "group element out of range");
    std::vector<int> support = patch->star(v);
    if (support.empty()) throw Error(ErrorKind::InvalidInput, "no edges at vertex " + point_str(v));
    std::vector<char> outgoing;
    for (int e : support) outgoing.push_back(patch->edges()[e].tail() == v);
    const int ginv = G.inv(g);
    auto kernel = [&G, g, ginv, outgoing](std::vector<int>& x, cd&) {
        for (size_t j = 0; j < x.size(); ++j) x[j] = outgoing[j] ? G.mul(g, x[j]) : G.mul(x[j], ginv);
        return true;
    };
    return LatticeOperator(std::make_shared<const MonomialOp>(patch, support, kernel));
}

LatticeOperator boundary_vertex_op(const PatchPtr& patch, GridPoint v, int k) {
    if (!patch->is_wall_vertex(v) || !patch->vertex_complete(v))
        throw Error(ErrorKind::InvalidInput, "no complete wall vertex at " + point_str(v));
    const GroupTable& G = *patch->group();
    const Subgroup& K = patch->subgroup();
    const TwoCocycle& phi = patch->cocycle();
    const int kl = k_local(*patch, k);
    const int left = patch->edge_index(h_edge(v.x - 1, 0));    // v is its head
    const int right = patch->edge_index(h_edge(v.x, 0));       // v is its tail
    const int up = patch->edge_index(v_edge(v.x, 0));
    const int kinv = G.inv(k);
    auto kernel = [&G, &K, &phi, k, kl, kinv](std::vector<int>& x, cd& ph) {
        // x = {left, right, up}
        const int l_new = G.mul(x[0], kinv);
        ph /= phi(K.index_of(l_new), kl);
        ph *= phi(kl, K.index_of(x[1]));
        x[0] = l_new;
        x[1] = G.mul(k, x[1]);
        x[2] = G.mul(k, x[2]);
        return true;
    };
    return LatticeOperator(std::make_shared<const MonomialOp>(patch, std::vector<int>{left, right, up}, kernel));
}

LatticeOperator face_op(const PatchPtr& patch, const Site& s, int h) {
    const GroupTable& G = *patch->group();
    if (!patch->site_valid(s))
        throw Error(ErrorKind::InvalidInput,
                    "site " + point_str(s.vertex) + "/" + point_str(s.face) + " is not a complete site");
    if (patch->is_outer_face(s.face)) {
        const int b = patch->edge_index(h_edge(s.face.x, 0));
        auto kernel = [&G, h](std::vector<int>& x, cd&) { return G.inv(x[0]) == h; };
        return LatticeOperator(std::make_shared<const MonomialOp>(patch, std::vector<int>{b}, kernel));
    }
    const FaceCycle c = face_cycle(s.face);
    int start = 0;
    while (c.corner[start] != s.vertex) ++start;
    std::vector<int> support;
    std::vector<char> forward;
    for (int t = 0; t < 4; ++t) {
        const int j = (start + t) % 4;
        support.push_back(patch->edge_index(c.edge[j]));
        forward.push_back(c.forward[j]);
    }
    auto kernel = [&G, h, forward](std::vector<int>& x, cd&) {
        int prod = 0;
        for (size_t j = 0; j < 4; ++j) prod = G.mul(prod, forward[j] ? x[j] : G.inv(x[j]));
        return prod == h;
    };
    return LatticeOperator(std::make_shared<const MonomialOp>(patch, support, kernel));
}

LatticeOperator vertex_projector(const PatchPtr& patch, GridPoint v) {
    LatticeOperator out;
    const int n = patch->group()->order();
    for (int g = 0; g < n; ++g) out.add(vertex_op(patch, v, g), 1.0 / n);
    return out;
}

LatticeOperator face_projector(const PatchPtr& patch, GridPoint f) {
    return face_op(patch, Site{f, f}, 0);
}

LatticeOperator boundary_vertex_projector(const PatchPtr& patch, GridPoint v) {
    LatticeOperator out;
    const Subgroup& K = patch->subgroup();
    for (int m : K.members) out.add(boundary_vertex_op(patch, v, m), 1.0 / K.order());
    return out;
}

LatticeOperator boundary_face_projector(const PatchPtr& patch, const Site& s) {
    LatticeOperator out;
    for (int m : patch->subgroup().members) out.add(face_op(patch, s, m));
    return out;
}

std::vector<HamiltonianTerm> hamiltonian_terms(const PatchPtr& patch) {
    std::vector<HamiltonianTerm> out;
    for (GridPoint v : patch->internal_vertices())
        out.push_back({"A" + point_str(v), vertex_projector(patch, v), patch->star(v)});
    if (patch->options().rim_vertex_terms)
        for (GridPoint v : patch->rim_vertices())
            out.push_back({"A" + point_str(v), vertex_projector(patch, v), patch->star(v)});
    for (GridPoint f : patch->faces()) {
        std::vector<int> sup;
        for (const GridEdge& e : face_cycle(f).edge) sup.push_back(patch->edge_index(e));
        out.push_back({"B" + point_str(f), face_projector(patch, f), sup});
    }
    if (patch->has_boundary()) {
        for (GridPoint v : patch->wall_vertices())
            out.push_back({"A~K" + point_str(v), boundary_vertex_projector(patch, v), patch->star(v)});
        for (int e = 0; e < patch->edge_count(); ++e) {
            if (!patch->is_wall_edge(e)) continue;
            const GridEdge& ed = patch->edges()[e];
            const Site s{ed.tail(), {ed.x, -1}};
            out.push_back({"BK" + point_str(s.face), boundary_face_projector(patch, s), {e}});
        }
    }
    return out;
}

// ---- ribbons ----

ResolvedRibbon resolve_ribbon(const LatticePatch& patch, const RibbonSpec& ribbon) {
    auto fail = [](const std::string& why) { throw Error(ErrorKind::InvalidRibbon, why); };
    if (!patch.site_valid(ribbon.start)) fail("start site is not a site of the patch");
    ResolvedRibbon r;
    r.start = ribbon.start;
    Site cur = ribbon.start;
    r.path_vertices.push_back(cur.vertex);
    r.visited_faces.push_back(cur.face);
    for (size_t i = 0; i < ribbon.steps.size(); ++i) {
        const RibbonStep& st = ribbon.steps[i];
        const std::string where = "step " + std::to_string(i) + " on " + edge_str(st.edge);
        const int e = patch.edge_index(st.edge);
        if (e < 0) fail(where + ": edge not in patch");
        if (!incident(st.edge, cur.vertex)) fail(where + ": edge does not touch the current vertex");
        const auto [fa, fb] = faces_of(st.edge);
        if (cur.face != fa && cur.face != fb) fail(where + ": edge is not on the current face");
        const bool at_tail = st.edge.tail() == cur.vertex;
        if (st.kind == StepKind::Direct) {
            // the current face must lie on the right of the walk
            GridPoint right;
            if (st.edge.vertical) right = at_tail ? GridPoint{st.edge.x, st.edge.y} : GridPoint{st.edge.x - 1, st.edge.y};
            else right = at_tail ? GridPoint{st.edge.x, st.edge.y - 1} : GridPoint{st.edge.x, st.edge.y};
            if (right != cur.face) fail(where + ": direct step with the face on the wrong side");
            r.direct.push_back({e, at_tail});
            cur.vertex = at_tail ? st.edge.head() : st.edge.tail();
            r.path_vertices.push_back(cur.vertex);
        } else {
            // the vertex must lie on the left of the crossing
            const GridPoint to = cur.face == fa ? fb : fa;
            bool ok;
            if (st.edge.vertical) ok = (to == fb) ? !at_tail : at_tail;   // eastward: head, westward: tail
            else ok = (to == fb) ? at_tail : !at_tail;                    // northward: tail, southward: head
            if (!ok) fail(where + ": crossing with the vertex on the wrong side");
            if (!patch.face_complete(to) && !patch.is_outer_face(to)) fail(where + ": crosses into a missing face");
            r.crossings.push_back({e, static_cast<int>(r.direct.size()), at_tail, cur.face, to});
            cur.face = to;
            r.visited_faces.push_back(to);
        }
    }
    r.end = cur;
    if (!patch.site_valid(r.end)) fail("end site is not a site of the patch");
    if (r.crossings.empty()) fail("ribbon crosses no edge");
    std::set<GridPoint> pv(r.path_vertices.begin(), r.path_vertices.end());
    if (pv.size() != r.path_vertices.size()) fail("direct path revisits a vertex");
    std::set<int> used;
    for (const auto& d : r.direct) used.insert(d.edge);
    for (const auto& c : r.crossings) {
        if (!used.insert(c.edge).second) fail("edge " + edge_str(patch.edges()[c.edge]) + " used twice");
        const GridEdge& ed = patch.edges()[c.edge];
        const GridPoint far = c.away_forward ? ed.head() : ed.tail();
        if (pv.count(far)) fail("crossed edge " + edge_str(ed) + " ends on the direct path");
    }
    return r;
}

RibbonSpec default_ribbon(const LatticePatch& patch) {
    const Site s0 = patch.s0();
    RibbonSpec r{s0, {}};
    if (patch.has_boundary()) {
        r.steps = {{StepKind::Dual, h_edge(s0.vertex.x, 0)}, {StepKind::Direct, v_edge(s0.vertex.x, 0)}};
    } else {
        const GridPoint v = s0.vertex;
        if (s0.face != GridPoint{v.x - 1, v.y - 1})
            throw Error(ErrorKind::InvalidRibbon, "no default ribbon for this start site");
        r.steps = {{StepKind::Dual, v_edge(v.x, v.y - 1)}, {StepKind::Direct, h_edge(v.x, v.y)}};
    }
    const ResolvedRibbon rr = resolve_ribbon(patch, r);
    if (rr.end != patch.s1()) throw Error(ErrorKind::InvalidRibbon, "default ribbon does not end at s1");
    return r;
}

std::pair<RibbonSpec, RibbonSpec> path_independence_ribbons() {
    const Site s0{{1, 1}, {0, 0}};
    RibbonSpec a{s0,
                 {{StepKind::Dual, v_edge(1, 0)},
                  {StepKind::Direct, h_edge(1, 1)},
                  {StepKind::Dual, v_edge(2, 0)},
                  {StepKind::Dual, h_edge(2, 1)},
                  {StepKind::Direct, v_edge(2, 1)}}};
    RibbonSpec b{s0,
                 {{StepKind::Dual, v_edge(1, 0)},
                  {StepKind::Dual, h_edge(1, 1)},
                  {StepKind::Direct, v_edge(1, 1)},
                  {StepKind::Direct, h_edge(1, 2)},
                  {StepKind::Dual, v_edge(2, 1)}}};
    return {a, b};
}

namespace {

// F^{h,g}, optionally with the boundary phase phi(h, b) on the first crossed wall edge.
LatticeOperator make_ribbon(const PatchPtr& patch, const ResolvedRibbon& r, int h, int g, bool phased) {
    const GroupTable& G = *patch->group();
    if (h < 0 || h >= G.order() || g < 0 || g >= G.order())
        throw Error(ErrorKind::InvalidInput, "group element out of range");
    std::vector<int> support;
    for (const auto& d : r.direct) support.push_back(d.edge);
    for (const auto& c : r.crossings) support.push_back(c.edge);
    const size_t nd = r.direct.size();
    std::vector<char> dfwd;
    for (const auto& d : r.direct) dfwd.push_back(d.forward);
    std::vector<int> cprefix;
    std::vector<char> caway;
    for (const auto& c : r.crossings) {
        cprefix.push_back(c.prefix);
        caway.push_back(c.away_forward);
    }
    const Subgroup* K = phased ? &patch->subgroup() : nullptr;
    const TwoCocycle* phi = phased ? &patch->cocycle() : nullptr;
    const int hl = phased ? k_local(*patch, h) : -1;
    auto kernel = [&G, h, g, nd, dfwd, cprefix, caway, K, phi, hl](std::vector<int>& x, cd& ph) {
        std::vector<int> prefix(nd + 1, 0);
        for (size_t j = 0; j < nd; ++j) prefix[j + 1] = G.mul(prefix[j], dfwd[j] ? x[j] : G.inv(x[j]));
        if (prefix[nd] != g) return false;
        for (size_t c = 0; c < cprefix.size(); ++c) {
            const int p = prefix[cprefix[c]];
            const int q = G.mul(G.mul(G.inv(p), h), p);
            int& y = x[nd + c];
            if (c == 0 && K) {
                const int yl = K->index_of(y);
                if (yl < 0) return false;
                ph *= (*phi)(hl, yl);
            }
            y = caway[c] ? G.mul(q, y) : G.mul(y, G.inv(q));
        }
        return true;
    };
    return LatticeOperator(std::make_shared<const MonomialOp>(patch, support, kernel));
}

}  // namespace

LatticeOperator ribbon_op(const PatchPtr& patch, const RibbonSpec& ribbon, int h, int g) {
    const ResolvedRibbon r = resolve_ribbon(*patch, ribbon);
    bool touches_wall = false;
    for (const auto& d : r.direct) touches_wall |= patch->is_wall_edge(d.edge);
    for (const auto& c : r.crossings) touches_wall |= patch->is_wall_edge(c.edge);
    if (touches_wall) {
        if (!patch->trivial_cocycle() || patch->subgroup().order() != patch->group()->order())
            throw Error(ErrorKind::InvalidRibbon, "bulk ribbon on the wall needs K = G and a trivial cocycle");
    }
    return make_ribbon(patch, r, h, g, false);
}

LatticeOperator boundary_ribbon_op(const PatchPtr& patch, const RibbonSpec& ribbon, int k, int g) {
    if (!patch->has_boundary()) throw Error(ErrorKind::InvalidRibbon, "boundary ribbon on a patch without wall");
    const ResolvedRibbon r = resolve_ribbon(*patch, ribbon);
    if (r.start != patch->s0()) throw Error(ErrorKind::InvalidRibbon, "boundary ribbon must start at s0");
    const int b = patch->edge_index(h_edge(patch->s0().vertex.x, 0));
    if (r.crossings.front().edge != b || r.crossings.front().prefix != 0 || patch->mark(b) != EdgeMark::Solid)
        throw Error(ErrorKind::InvalidRibbon, "boundary ribbon must first cross the solid wall edge of s0");
    for (const auto& d : r.direct)
        if (patch->is_wall_edge(d.edge)) throw Error(ErrorKind::InvalidRibbon, "boundary ribbon walks on the wall");
    for (size_t c = 1; c < r.crossings.size(); ++c)
        if (patch->is_wall_edge(r.crossings[c].edge))
            throw Error(ErrorKind::InvalidRibbon, "boundary ribbon crosses the wall twice");
    k_local(*patch, k);
    return make_ribbon(patch, r, k, g, true);
}

LatticeOperator invariant_op(const PatchPtr& patch, const RibbonSpec& ribbon, int k, int g) {
    const GroupTable& G = *patch->group();
    const Subgroup& K = patch->subgroup();
    const TwoCocycle& phi = patch->cocycle();
    const GroupTable& Kg = *K.as_group;
    const int kl = k_local(*patch, k);
    const int ginv = G.inv(g);
    LatticeOperator out;
    for (int ll = 0; ll < K.order(); ++ll) {
        const int l = K.embed(ll);
        const cd c = phi(ll, kl) * phi(Kg.mul(ll, kl), Kg.inv(ll));
        out.add(boundary_ribbon_op(patch, ribbon, G.conj(l, k), G.mul(l, ginv)), c);
    }
    return out;
}

LatticeState ground_state(const PatchPtr& patch, std::uint64_t seed) {
    const std::vector<HamiltonianTerm> terms = hamiltonian_terms(patch);
    for (int attempt = 0; attempt < 8; ++attempt) {
        LatticeState s = random_state(patch, seed + 0x9e3779b97f4a7c15ULL * attempt);
        for (const HamiltonianTerm& t : terms) s.amplitudes = t.projector.apply(s.amplitudes);
        const double n = s.norm();
        if (n > 1e-8) {
            s.amplitudes /= n;
            return s;
        }
    }
    throw Error(ErrorKind::ZeroProjection, "projected state vanished in 8 attempts on " + patch->label());
}

DGClassFunction lattice_boundary_character(const PatchPtr& patch, const RibbonSpec& ribbon, std::uint64_t seed) {
    if (!patch->has_boundary()) throw Error(ErrorKind::InvalidInput, "boundary character needs a wall");
    const ResolvedRibbon rr = resolve_ribbon(*patch, ribbon);
    const Site s1 = rr.end;
    if (patch->is_outer_face(s1.face) || !patch->vertex_complete(s1.vertex) || patch->is_wall_vertex(s1.vertex))
        throw Error(ErrorKind::InvalidRibbon, "ribbon must end at a complete internal site");
    const GroupTable& G = *patch->group();
    const Subgroup& K = patch->subgroup();
    const int n = G.order();
    const LatticeState psi = ground_state(patch, seed);
    const std::vector<int> reps = cosets(G, K);
    const double scale = std::sqrt(static_cast<double>(reps.size()));

    std::vector<LatticeOperator> a_ops, b_ops;
    for (int x = 0; x < n; ++x) {
        a_ops.push_back(vertex_op(patch, s1.vertex, x));
        b_ops.push_back(face_op(patch, s1, x));
    }
    DGClassFunction chi = DGClassFunction::zero(patch->group());
    for (int k : K.members)
        for (int gi : reps) {
            const Eigen::VectorXcd v = scale * invariant_op(patch, ribbon, k, gi).apply(psi.amplitudes);
            for (int h = 0; h < n; ++h) {
                const Eigen::VectorXcd bv = b_ops[h].apply(v);
                if (bv.squaredNorm() == 0.0) continue;
                for (int g = 0; g < n; ++g) chi.at(g, h) += v.dot(a_ops[g].apply(bv));
            }
        }
    return chi;
}

}  // namespace qdouble
