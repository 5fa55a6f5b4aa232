# Add project root to path so `src` and `config` import from any working directory
import sys
from pathlib import Path

project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))
