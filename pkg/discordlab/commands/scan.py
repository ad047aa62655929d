import logging

from discordlab.config import Config
from discordlab.services.file_service import StateFileService, parse_dims
from discordlab.services.scan_service import ScanService
from discordlab.utils.formatting import render

logger = logging.getLogger(__name__)


def register(subparsers, parents):
    parser = subparsers.add_parser('werner-scan', parents=parents,
                                   help='Sweep the Werner parameter z and write a CSV')
    parser.add_argument('--m', type=int, required=True, help='Local dimension of the Werner state')
    parser.add_argument('--z-from', type=float, required=True)
    parser.add_argument('--z-to', type=float, required=True)
    parser.add_argument('--steps', type=int, required=True)
    parser.add_argument('--bipartition', type=parse_dims, required=True, metavar='MxN')
    parser.add_argument('--out', required=True, help='CSV output path')
    parser.set_defaults(handler=cmd_werner_scan)

    parser = subparsers.add_parser('erratum-scan', parents=parents,
                                   help='Count negative PT eigenvalues over random states')
    parser.add_argument('--dims', required=True,
                        help='Comma-separated dimension pairs, e.g. 2x2,2x3,3x3')
    parser.add_argument('--samples', type=int, required=True, help='Random states per pair')
    parser.set_defaults(handler=cmd_erratum_scan)


def cmd_werner_scan(args) -> int:
    zs = ScanService.z_grid(args.z_from, args.z_to, args.steps)
    rows = ScanService.werner_scan(args.m, zs, args.bipartition)
    StateFileService.write_scan_csv(rows, args.out)
    logger.info("Wrote %d rows to %s", len(rows), args.out)
    return 0


def cmd_erratum_scan(args) -> int:
    dims = [parse_dims(part) for part in args.dims.split(',') if part.strip()]
    report = ScanService.erratum_scan(dims, args.samples, seed=Config.DEFAULT_SEED)
    print(render(report.to_dict(), Config.DEFAULT_FORMAT))
    return 0
