"""Zero forcing parameters, forts and fort numbers by exact integer programming."""

from .graph import Graph, GraphError, encode_graph6, family, parse_graph6, read_graph6_file
from .forcing import (FortCollection, ForcingTrace, OracleCapExceeded, closure, is_fort, is_zfs,
                      oracle_ft, oracle_minimal_forts, oracle_pt_PT, oracle_th, oracle_Z, propagation_time)
from .models import (ExtractionError, build_fort_cover, build_fort_number, build_frac_min_fort, build_im,
                     build_min_fort, build_minimal_fort_excl, build_tsm, build_tsm_pti, extract_fort,
                     extract_packing, extract_trace, extract_zfs)
from .drivers import (CutLoopState, RankData, all_minimal_forts, compute_parameter, fort_number,
                      fractional_zf, m_lower_bound_report, mr_edge_sum, mr_vertex_sum, realized_pti,
                      zf_via_cut_generation)

__version__ = "0.1.0"
