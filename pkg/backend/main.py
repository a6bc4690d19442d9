from fastapi import FastAPI, HTTPException
from pydantic import BaseModel
from fastapi.responses import PlainTextResponse
from typing import Any, Dict, Literal, Optional
import json
import os
import sys

# Add current directory to path for imports
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from errors import WorkbenchError
from settings import configure_logging, get_settings
from workbench_document import parse
from workbench_runner import RunReport, dot_for, run

configure_logging(get_settings().log_level)

app = FastAPI(title="Contact Algebra Workbench")


class RunInput(BaseModel):
    document: Dict[str, Any]
    seed: Optional[int] = None
    samples: Optional[int] = None
    depth: Optional[int] = None


class DotInput(BaseModel):
    document: Dict[str, Any]
    algebra: Optional[str] = None
    target: Literal["contact-graph", "dual-space"] = "contact-graph"


@app.get("/")
async def root():
    return {"message": "Contact algebra workbench is online"}


@app.post("/run", response_model=RunReport)
def run_document(data: RunInput):
    try:
        document = parse(json.dumps(data.document, indent=2))
        return run(document, seed=data.seed, samples=data.samples, depth=data.depth)
    except WorkbenchError as e:
        raise HTTPException(status_code=422, detail=f"{type(e).__name__}: {e}")
    except Exception as e:
        raise HTTPException(status_code=500, detail=str(e))


@app.post("/dot", response_class=PlainTextResponse)
def dot(data: DotInput):
    try:
        document = parse(json.dumps(data.document, indent=2))
        return dot_for(document, data.algebra, data.target)
    except WorkbenchError as e:
        raise HTTPException(status_code=422, detail=f"{type(e).__name__}: {e}")
    except Exception as e:
        raise HTTPException(status_code=500, detail=str(e))


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
