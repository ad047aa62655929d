import logging

import numpy as np

from discordlab.config import Config
from discordlab.errors import ValidationError
from discordlab.models.state import WernerParams
from discordlab.services.file_service import StateFileService, parse_dims
from discordlab.services.state_service import StateService

logger = logging.getLogger(__name__)

FAMILIES = ('werner', 'bell', 'cq', 'random')


def register(subparsers, parents):
    parser = subparsers.add_parser('make-state', parents=parents,
                                   help='Write a StateFile for one of the state families')
    parser.add_argument('--family', required=True, choices=FAMILIES)
    parser.add_argument('--m', type=int, default=2, help='Local dimension (werner, bell)')
    parser.add_argument('--z', type=float, default=-1.0, help='Werner parameter in [-1, 1]')
    parser.add_argument('--dim', type=int, default=None, help='Total dimension (random)')
    parser.add_argument('--rank', type=int, default=None, help='Rank (random), full by default')
    parser.add_argument('--dims', type=parse_dims, default=None, metavar='MxN',
                        help='Bipartition (random, cq)')
    parser.add_argument('--probs', default=None,
                        help='Comma-separated probabilities of the classical register (cq)')
    parser.add_argument('--mixed-blocks', action='store_true',
                        help='Use maximally mixed blocks instead of random ones (cq)')
    parser.add_argument('--out', required=True, help='Output path')
    parser.set_defaults(handler=cmd_make_state)


def default_dims(dim: int):
    """Smallest non-trivial factor on A"""
    for m in range(2, dim + 1):
        if dim % m == 0:
            return m, dim // m
    return 1, dim


def build_state(args):
    if args.family == 'werner':
        return StateService.werner(WernerParams(m=args.m, z=args.z))
    if args.family == 'bell':
        return StateService.max_entangled(args.m)
    if args.family == 'random':
        if args.dim is None and args.dims is None:
            raise ValidationError("Random family needs --dim or --dims")
        dims = args.dims or default_dims(args.dim)
        if args.dim is not None and dims[0] * dims[1] != args.dim:
            raise ValidationError(f"--dims {dims[0]}x{dims[1]} does not match --dim {args.dim}")
        return StateService.random_state(dims, args.rank, Config.DEFAULT_SEED)

    if args.probs is None or args.dims is None:
        raise ValidationError("cq family needs --probs and --dims")
    try:
        probs = [float(p) for p in args.probs.split(',')]
    except ValueError:
        raise ValidationError(f"--probs must be comma-separated numbers, got {args.probs!r}")
    m, n = args.dims
    if len(probs) != m:
        raise ValidationError(f"Need {m} probabilities for dims {m}x{n}, got {len(probs)}")
    if args.mixed_blocks:
        blocks = [np.eye(n) / n for _ in range(m)]
    else:
        seqs = [np.random.SeedSequence(Config.DEFAULT_SEED, spawn_key=(i,)) for i in range(m)]
        blocks = [StateService.random_density(n, n, seq) for seq in seqs]
    return StateService.cq_state(probs, blocks)


def cmd_make_state(args) -> int:
    rho = build_state(args)
    StateFileService.save_state(rho, args.out)
    logger.info("Wrote %s state %dx%d to %s (seed %d)", args.family, rho.m, rho.n, args.out, Config.DEFAULT_SEED)
    return 0
