import sys
from pathlib import Path

# tests import the library the same way the services do
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))
